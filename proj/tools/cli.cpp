#include "cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "starkjc/dynamics.hpp"
#include "starkjc/errors.hpp"
#include "starkjc/husimi.hpp"
#include "starkjc/lineshape.hpp"
#include "starkjc/model.hpp"
#include "starkjc/states.hpp"
#include "starkjc/verify.hpp"

namespace starkjc::cli {

namespace {

using json = nlohmann::json;
using lineshape::Preparation;
using states::FieldKind;

const std::vector<std::string> kCommands{"photon-dist", "inversion", "lineshape", "husimi", "optimize-r", "verify"};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

FieldKind parse_kind(const std::string& s) {
  if (s == "single") return FieldKind::Single;
  if (s == "plus") return FieldKind::SuperpositionPlus;
  if (s == "minus") return FieldKind::SuperpositionMinus;
  throw PreconditionError("--kind must be single, plus or minus, got '" + s + "'");
}

Preparation parse_prep(const std::string& s) {
  if (s == "excited") return Preparation::Excited;
  if (s == "ground") return Preparation::Ground;
  throw PreconditionError("--prep must be excited or ground, got '" + s + "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError(message);
}

bool finite(double x) { return std::isfinite(x); }

json echo(const RunConfig& c) {
  json j{{"command", c.command}, {"alpha", c.alpha}, {"alpha_im", c.alpha_im}, {"r", c.r}, {"kind", c.kind},
         {"delta", c.delta}, {"chi", c.chi}, {"g", c.g}, {"prep", c.prep}, {"tmax", c.tmax}, {"tsteps", c.tsteps},
         {"delta_min", c.delta_min}, {"delta_max", c.delta_max}, {"steps", c.steps}, {"r_lo", c.r_lo},
         {"r_hi", c.r_hi}, {"resolution", c.resolution}, {"tol", c.tol}, {"format", c.format}};
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  j["re_min"] = opt(c.re_min);
  j["re_max"] = opt(c.re_max);
  j["im_min"] = opt(c.im_min);
  j["im_max"] = opt(c.im_max);
  j["criteria"] = c.criteria;
  return j;
}

// Column-oriented result; rendered either as CSV rows or as JSON arrays.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;
  json meta;
};

std::string render(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json j;
    j["meta"] = t.meta;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (t.columns[c] == "n") {
        std::vector<long long> n(t.data[c].begin(), t.data[c].end());
        j["data"]["n"] = n;
      } else {
        j["data"][t.columns[c]] = t.data[c];
      }
    }
    os << j.dump() << '\n';
    return os.str();
  }
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  const std::size_t rows = t.data.empty() ? 0 : t.data.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << num(t.data[c][r]);
    os << '\n';
  }
  return os.str();
}

void emit(const RunConfig& c, const std::string& body, std::ostream& out) {
  if (c.output.empty()) {
    out << body;
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(c.output);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << body;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ResourceError("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ResourceError("cannot move output into place at " + target.string());
  }
}

struct Prepared {
  states::FieldSpec field;
  ModelParams params;
  Preparation prep = Preparation::Excited;
  husimi::Window window;
};

// Every check happens here, before any computation.
Prepared validate(const RunConfig& c) {
  require(std::find(kCommands.begin(), kCommands.end(), c.command) != kCommands.end(),
          "unknown command '" + c.command + "'");
  require(c.format == "csv" || c.format == "json", "--format must be csv or json");
  Prepared p;
  if (c.command == "verify") {
    const auto ids = verify::criteria();
    for (int id : c.criteria)
      require(std::find(ids.begin(), ids.end(), id) != ids.end(), "unknown criterion " + std::to_string(id));
    return p;
  }
  require(finite(c.alpha) && finite(c.alpha_im), "--alpha and --alpha-im must be finite");
  require(c.tol > 0.0 && c.tol <= 1e-3, "--tol must lie in (0, 1e-3]");
  p.field = {{c.alpha, c.alpha_im}, c.r, parse_kind(c.kind)};
  if (c.command != "optimize-r") p.field.validate();
  p.params = {c.delta, c.chi, c.g};
  p.params.validate();
  p.prep = parse_prep(c.prep);

  if (c.command == "inversion") {
    require(finite(c.tmax) && c.tmax >= 0.0, "--tmax must be finite and >= 0");
    require(c.tsteps >= 2, "--tsteps must be >= 2");
  } else if (c.command == "lineshape" || c.command == "optimize-r") {
    require(finite(c.delta_min) && finite(c.delta_max) && c.delta_min < c.delta_max,
            "need finite --delta-min < --delta-max");
    require(c.steps >= 2, "--steps must be >= 2");
  }
  if (c.command == "optimize-r") {
    require(finite(c.r_lo) && finite(c.r_hi) && c.r_lo <= c.r_hi, "need finite --r-lo <= --r-hi");
    states::FieldSpec{p.field.alpha, c.r_lo, p.field.kind}.validate();
    states::FieldSpec{p.field.alpha, c.r_hi, p.field.kind}.validate();
  }
  if (c.command == "husimi") {
    require(c.resolution >= 16, "--resolution must be >= 16");
    p.window = husimi::default_window(p.field);
    if (c.re_min) p.window.re_min = *c.re_min;
    if (c.re_max) p.window.re_max = *c.re_max;
    if (c.im_min) p.window.im_min = *c.im_min;
    if (c.im_max) p.window.im_max = *c.im_max;
    const auto& w = p.window;
    require(finite(w.re_min) && finite(w.re_max) && finite(w.im_min) && finite(w.im_max) && w.re_min < w.re_max &&
                w.im_min < w.im_max,
            "husimi window must satisfy re-min < re-max and im-min < im-max");
  }
  return p;
}

json base_meta(const RunConfig& c) { return {{"config", echo(c)}, {"version", STARKJC_VERSION}}; }

int run_verify(const RunConfig& c, std::ostream& out) {
  const auto ids = c.criteria.empty() ? verify::criteria() : c.criteria;
  const auto results = verify::run_all(ids);
  bool all = true;
  std::ostringstream os;
  if (c.format == "json") {
    json j = json::array();
    for (const auto& r : results) {
      j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                   {"seconds", r.seconds}, {"budget_seconds", r.budget_seconds}});
      all = all && r.passed;
    }
    os << j.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      os << verify::format(r) << '\n';
      all = all && r.passed;
    }
  }
  emit(c, os.str(), out);
  return all ? kOk : kVerifyFailed;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Prepared p = validate(c);
  if (c.command == "verify") return run_verify(c, out);
  if (!p.params.chi_within_validity())
    err << "warning: |chi| > g lies outside the validity range of the effective Hamiltonian\n";

  Table t;
  t.meta = base_meta(c);
  t.meta["truncation"] = nullptr;

  if (c.command == "photon-dist") {
    const auto dist = states::photon_dist(p.field, c.tol);
    t.columns = {"n", "p"};
    t.data.resize(2);
    for (int n = 0; n <= dist.truncation; ++n) {
      t.data[0].push_back(n);
      t.data[1].push_back(dist.probs[n]);
    }
    t.meta["truncation"] = dist.truncation;
    t.meta["tail_mass_bound"] = dist.tail_mass_bound;
  } else if (c.command == "inversion") {
    const auto dist = states::photon_dist(p.field, c.tol);
    t.columns = {"t", "w"};
    t.data.resize(2);
    for (int k = 0; k < c.tsteps; ++k) {
      const double time = c.tmax * k / (c.tsteps - 1);
      t.data[0].push_back(time);
      t.data[1].push_back(p.prep == Preparation::Excited ? dynamics::inversion_excited(dist, time, p.params)
                                                          : dynamics::inversion_ground(dist, time, p.params));
    }
    t.meta["truncation"] = dist.truncation;
  } else if (c.command == "lineshape") {
    const auto s = lineshape::scan(p.field, p.prep, p.params, c.delta_min, c.delta_max, c.steps, c.tol);
    t.columns = {"delta", "w_avg"};
    t.data = {s.deltas, s.values};
    t.meta["truncation"] = s.dist.truncation;
  } else if (c.command == "husimi") {
    const auto g = husimi::grid(p.field, p.window, c.resolution, c.resolution);
    t.columns = {"re_beta", "im_beta", "q"};
    t.data.resize(3);
    for (int j = 0; j < g.n_im; ++j)
      for (int i = 0; i < g.n_re; ++i) {
        t.data[0].push_back(g.re_at(i));
        t.data[1].push_back(g.im_at(j));
        t.data[2].push_back(g.at(i, j));
      }
    t.meta["window"] = {p.window.re_min, p.window.re_max, p.window.im_min, p.window.im_max};
  } else {
    const auto best = lineshape::optimize_r(p.field.alpha, p.field.kind, p.prep, p.params, c.r_lo, c.r_hi,
                                            c.delta_min, c.delta_max, c.steps);
    json j{{"r_star", best.r_star}, {"depth", best.depth}, {"delta_star", best.delta_star},
           {"unimodal", best.unimodal}};
    if (c.format == "json") j["meta"] = base_meta(c);
    emit(c, j.dump() + "\n", out);
    return kOk;
  }
  emit(c, render(t, c.format), out);
  return kOk;
}

int report(std::ostream& err, int code, const char* type, const std::string& message) {
  const char* category = code == kValidation ? "validation" : code == kResource ? "resource" : "internal";
  err << json{{"error", {{"category", category}, {"type", type}, {"message", message}, {"exit_code", code}}}}.dump()
      << '\n';
  return code;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out, err);
  } catch (const TruncationError& e) {
    return report(err, kResource, "TruncationError", e.what());
  } catch (const ResourceError& e) {
    return report(err, kResource, "ResourceError", e.what());
  } catch (const std::bad_alloc&) {
    return report(err, kResource, "OutOfMemory", "allocation failed");
  } catch (const DegenerateStateError& e) {
    return report(err, kValidation, "DegenerateStateError", e.what());
  } catch (const DomainError& e) {
    return report(err, kValidation, "DomainError", e.what());
  } catch (const PreconditionError& e) {
    return report(err, kValidation, "PreconditionError", e.what());
  } catch (const NoInteriorMinimumError& e) {
    return report(err, kValidation, "NoInteriorMinimumError", e.what());
  } catch (const std::exception& e) {
    return report(err, kInternal, "InternalError", e.what());
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stark-shifted Jaynes-Cummings dynamics and micromaser lineshapes"};
  app.set_version_flag("--version", STARKJC_VERSION);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.fallthrough();
  app.require_subcommand(1, 1);

  RunConfig c;
  app.add_option("--alpha", c.alpha, "Real part of the displacement")->capture_default_str();
  app.add_option("--alpha-im", c.alpha_im, "Imaginary part of the displacement")->capture_default_str();
  app.add_option("--r", c.r, "Squeeze parameter")->capture_default_str();
  app.add_option("--kind", c.kind, "Field state")->check(CLI::IsMember({"single", "plus", "minus"}))->capture_default_str();
  app.add_option("--delta", c.delta, "Detuning")->capture_default_str();
  app.add_option("--chi", c.chi, "Stark strength")->capture_default_str();
  app.add_option("--g", c.g, "Coupling")->capture_default_str();
  app.add_option("--prep", c.prep, "Initial atomic state")->check(CLI::IsMember({"excited", "ground"}))->capture_default_str();
  app.add_option("--tmax", c.tmax, "End of the time grid")->capture_default_str();
  app.add_option("--tsteps", c.tsteps, "Number of time samples")->capture_default_str();
  app.add_option("--delta-min", c.delta_min, "Lower detuning")->capture_default_str();
  app.add_option("--delta-max", c.delta_max, "Upper detuning")->capture_default_str();
  app.add_option("--steps", c.steps, "Number of detuning samples")->capture_default_str();
  app.add_option("--r-lo", c.r_lo, "Lower end of the squeeze bracket")->capture_default_str();
  app.add_option("--r-hi", c.r_hi, "Upper end of the squeeze bracket")->capture_default_str();
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
  auto* o_re_min = app.add_option("--re-min", re_min, "Husimi window");
  auto* o_re_max = app.add_option("--re-max", re_max, "Husimi window");
  auto* o_im_min = app.add_option("--im-min", im_min, "Husimi window");
  auto* o_im_max = app.add_option("--im-max", im_max, "Husimi window");
  app.add_option("--resolution", c.resolution, "Husimi cells per axis")->capture_default_str();
  app.add_option("--tol", c.tol, "Photon-number tail tolerance")->capture_default_str();
  app.add_option("--criteria", c.criteria, "Criteria for verify (comma separated)")->delimiter(',');
  app.add_option("--output,-o", c.output, "Output file (default stdout)");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  app.add_subcommand("photon-dist", "Photon-number distribution: n,p");
  app.add_subcommand("inversion", "Atomic inversion over time: t,w");
  app.add_subcommand("lineshape", "Time-averaged inversion over detuning: delta,w_avg");
  app.add_subcommand("husimi", "Husimi Q on a phase-space grid: re_beta,im_beta,q");
  app.add_subcommand("optimize-r", "Squeeze parameter with the deepest lineshape dip");
  app.add_subcommand("verify", "Run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return report(err, kValidation, "UsageError", e.what());
  }
  c.command = app.get_subcommands().front()->get_name();
  if (o_re_min->count()) c.re_min = re_min;
  if (o_re_max->count()) c.re_max = re_max;
  if (o_im_min->count()) c.im_min = im_min;
  if (o_im_max->count()) c.im_max = im_max;
  return run(c, out, err);
}

}  // namespace starkjc::cli
