#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "photonstat/catalog.hpp"
#include "photonstat/errors.hpp"
#include "photonstat/genfunc.hpp"
#include "photonstat/herald.hpp"
#include "photonstat/photon_ops.hpp"

namespace photonstat::cli {

namespace {

constexpr const char* kVersion = "photonstat 1.0.0";

std::string op_label(std::size_t index, const std::string& text) {
  return "op " + std::to_string(index) + " (" + text + ")";
}

double parse_number(const std::string& text, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParameterError(what + ": '" + text + "' is not a finite number");
  }
  return v;
}

std::vector<std::pair<std::string, double>> params_of(const StateSpec& s) {
  switch (s.family) {
    case Family::Fock:
      return {{"n", static_cast<double>(s.count)}};
    case Family::Coherent:
    case Family::CatEven:
    case Family::CatOdd:
      return {{"a2", s.intensity}};
    case Family::Thermal:
    case Family::SqueezedVacuum:
      return {{"nbar", s.intensity}};
    case Family::Binomial:
    case Family::NegBinomial:
    case Family::AgarwalNegBinomial:
      return {{"eta", s.eta}, {"m", static_cast<double>(s.count)}};
  }
  return {};
}

std::string op_kind_name(PipelineOpKind kind) {
  switch (kind) {
    case PipelineOpKind::Sub:
      return "sub";
    case PipelineOpKind::Add:
      return "add";
    case PipelineOpKind::Att:
      return "att";
    case PipelineOpKind::Amp:
      return "amp";
  }
  return "?";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

std::string json_array(std::span<const double> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += json_number(values[i]);
  }
  return out + "]";
}

std::string json_params(const StateSpec& spec) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : params_of(spec)) {
    if (!first) out += ", ";
    first = false;
    out += quote(key) + ": " + json_number(value);
  }
  return out + "}";
}

struct MgfRow {
  double arg;
  std::optional<MgfPoint> m;
  std::optional<MgfPoint> n;
};

std::vector<MgfRow> evaluate_grid(const PhotonNumberDistribution& dist, const MgfGrid& grid) {
  std::vector<MgfRow> rows;
  for (std::size_t i = 0; i < grid.steps; ++i) {
    const double arg =
        grid.steps == 1 ? grid.start : grid.start + (grid.stop - grid.start) * static_cast<double>(i) / (grid.steps - 1);
    MgfRow row{arg, std::nullopt, std::nullopt};
    try {
      row.m = mgf_M(dist, arg);
    } catch (const DomainError&) {
    }
    try {
      row.n = mgf_N(dist, arg);
    } catch (const DomainError&) {
    }
    rows.push_back(row);
  }
  return rows;
}

void emit_dist_json(std::ostream& out, const PipelineRequest& req, const PipelineResult& res,
                    const MomentReport& mom) {
  out << "{\n";
  out << "  \"state\": " << quote(std::string(family_name(req.state.family))) << ",\n";
  out << "  \"params\": " << json_params(req.state) << ",\n";
  out << "  \"ops\": [";
  for (std::size_t i = 0; i < res.applied.size(); ++i) {
    const auto& a = res.applied[i];
    out << (i ? ",\n    " : "\n    ") << "{\"op\": " << quote(a.op.text) << ", \"kind\": " << quote(op_kind_name(a.op.kind))
        << ", \"value\": " << json_number(a.op.value) << ", \"success_norm\": " << json_number(a.success_norm) << "}";
  }
  out << (res.applied.empty() ? "],\n" : "\n  ],\n");
  out << "  \"truncation\": " << res.dist.truncation() << ",\n";
  out << "  \"tail_bound\": " << json_number(res.dist.tail_bound()) << ",\n";
  out << "  \"pmf\": " << json_array(res.dist.probs()) << ",\n";
  out << "  \"moments\": {\n";
  out << "    \"order\": " << req.moments << ",\n";
  out << "    \"mean\": " << json_number(mom.mean) << ",\n";
  out << "    \"variance\": " << json_number(mom.variance) << ",\n";
  out << "    \"g2\": " << (mom.g2 ? json_number(*mom.g2) : "null") << ",\n";
  out << "    \"parity\": " << json_number(mom.parity) << ",\n";
  out << "    \"factorial\": " << json_array(mom.factorial_moments) << ",\n";
  out << "    \"negative_factorial\": " << json_array(mom.negative_factorial_moments);
  if (req.mgf_grid) {
    out << ",\n    \"mgf\": [";
    const auto rows = evaluate_grid(res.dist, *req.mgf_grid);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << (i ? ",\n      " : "\n      ") << "{\"arg\": " << json_number(r.arg)
          << ", \"M\": " << (r.m ? json_number(r.m->value) : "null")
          << ", \"M_converged\": " << (r.m && r.m->converged ? "true" : "false")
          << ", \"N\": " << (r.n ? json_number(r.n->value) : "null")
          << ", \"N_converged\": " << (r.n && r.n->converged ? "true" : "false") << "}";
    }
    out << "\n    ]";
  }
  out << "\n  },\n";
  out << "  \"meta\": {\"version\": " << quote(kVersion) << ", \"tail_epsilon\": " << json_number(req.tail_epsilon)
      << ", \"finite_support\": " << (res.dist.finite_support() ? "true" : "false")
      << ", \"total\": " << json_number(res.dist.total()) << "}\n";
  out << "}\n";
}

std::string csv_number(double v) { return std::isfinite(v) ? format_double(v) : (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")); }

// Blocks separated by blank lines, each with its own header row.
void emit_dist_csv(std::ostream& out, const PipelineRequest& req, const PipelineResult& res,
                   const MomentReport& mom) {
  out << "n,P\n";
  for (std::size_t n = 0; n < res.dist.size(); ++n) out << n << ',' << csv_number(res.dist[n]) << '\n';
  out << "\nquantity,value\n";
  out << "state," << family_name(req.state.family) << '\n';
  for (const auto& [key, value] : params_of(req.state)) out << key << ',' << csv_number(value) << '\n';
  out << "truncation," << res.dist.truncation() << '\n';
  out << "tail_bound," << csv_number(res.dist.tail_bound()) << '\n';
  out << "mean," << csv_number(mom.mean) << '\n';
  out << "variance," << csv_number(mom.variance) << '\n';
  out << "g2," << (mom.g2 ? csv_number(*mom.g2) : "") << '\n';
  out << "parity," << csv_number(mom.parity) << '\n';
  if (!res.applied.empty()) {
    out << "\nindex,op,success_norm\n";
    for (std::size_t i = 0; i < res.applied.size(); ++i) {
      out << i + 1 << ',' << res.applied[i].op.text << ',' << csv_number(res.applied[i].success_norm) << '\n';
    }
  }
  out << "\nm,factorial_moment,negative_factorial_moment\n";
  for (std::size_t m = 0; m < mom.factorial_moments.size(); ++m) {
    out << m << ',' << csv_number(mom.factorial_moments[m]) << ',' << csv_number(mom.negative_factorial_moments[m])
        << '\n';
  }
  if (req.mgf_grid) {
    out << "\narg,M,N\n";
    for (const auto& r : evaluate_grid(res.dist, *req.mgf_grid)) {
      out << csv_number(r.arg) << ',' << (r.m ? csv_number(r.m->value) : "") << ','
          << (r.n ? csv_number(r.n->value) : "") << '\n';
    }
  }
}

// Rebuilds the pipeline described by a dist JSON document and compares the
// stored pmf bit for bit.
int verify_input(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open " << path << '\n';
    return kParameterError;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << path << ": " << e.what() << '\n';
    return kParameterError;
  }
  PipelineRequest req;
  std::vector<double> stored;
  try {
    StateFlags flags;
    flags.family = doc.at("state").get<std::string>();
    const auto& params = doc.at("params");
    if (params.contains("n")) flags.n = params["n"].get<std::uint64_t>();
    if (params.contains("a2")) flags.a2 = params["a2"].get<double>();
    if (params.contains("nbar")) flags.nbar = params["nbar"].get<double>();
    if (params.contains("eta")) flags.eta = params["eta"].get<double>();
    if (params.contains("m")) flags.m = params["m"].get<std::uint64_t>();
    req.state = make_state(flags);
    const auto& ops = doc.at("ops");
    if (ops.size() > kMaxOps) throw ParameterError("at most 16 ops per pipeline");
    for (std::size_t i = 0; i < ops.size(); ++i) req.ops.push_back(parse_op(ops[i].at("op").get<std::string>(), i + 1));
    req.tail_epsilon = doc.at("meta").at("tail_epsilon").get<double>();
    for (const auto& v : doc.at("pmf")) stored.push_back(v.is_null() ? std::nan("") : v.get<double>());
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << path << ": malformed document: " << e.what() << '\n';
    return kParameterError;
  }
  const auto res = run_pipeline(req);
  const auto probs = res.dist.probs();
  if (probs.size() != stored.size()) {
    out << "FAIL round-trip " << path << ": stored " << stored.size() << " values, recomputed " << probs.size() << '\n';
    return kVerifyFailed;
  }
  for (std::size_t n = 0; n < probs.size(); ++n) {
    if (probs[n] != stored[n]) {
      out << "FAIL round-trip " << path << ": P(" << n << ") stored " << format_double(stored[n]) << ", recomputed "
          << format_double(probs[n]) << '\n';
      return kVerifyFailed;
    }
  }
  out << "PASS round-trip " << path << ": " << probs.size() << " values identical\n";
  return kOk;
}

int run_verify(const std::string& pattern, const catalog::VerifyContext& ctx, std::ostream& out, std::ostream& err) {
  const auto selected = catalog::select(pattern);
  if (selected.empty()) {
    err << "error: no catalog entry matches '" << pattern << "'\n";
    return kParameterError;
  }
  struct Outcome {
    catalog::EntryOutcome result;
    std::string error;
  };
  std::vector<std::future<Outcome>> jobs;
  for (const auto* entry : selected) {
    jobs.push_back(std::async(std::launch::async, [entry, ctx]() {
      try {
        return Outcome{entry->run(ctx), {}};
      } catch (const std::exception& e) {
        return Outcome{{}, e.what()};
      }
    }));
  }
  std::vector<std::string> failed;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const auto* entry = selected[i];
    const auto outcome = jobs[i].get();
    const bool ok = outcome.error.empty() && outcome.result.passed();
    if (!ok) failed.push_back(entry->id);
    char line[512];
    std::snprintf(line, sizeof line, "%s %-28s %-8s max_err=%.3e tol=%.0e points=%zu", ok ? "PASS" : "FAIL",
                  entry->id.c_str(), std::string(catalog::evaluator_name(entry->kind)).c_str(),
                  outcome.result.max_error, outcome.result.tolerance, outcome.result.points);
    out << line;
    if (!outcome.error.empty()) {
      out << " error: " << outcome.error;
    } else if (!ok && !outcome.result.worst_case.empty()) {
      out << " worst: " << outcome.result.worst_case;
    }
    out << '\n';
  }
  out << selected.size() - failed.size() << '/' << selected.size() << " entries passed\n";
  if (failed.empty()) return kOk;
  out << "failed:";
  for (const auto& id : failed) out << ' ' << id;
  out << '\n';
  return kVerifyFailed;
}

void emit_figure(std::ostream& out, int id) {
  const auto table = catalog::figure_data(id);
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    out << static_cast<long>(row[0]);
    for (std::size_t i = 1; i < row.size(); ++i) out << ',' << format_double(row[i]);
    out << '\n';
  }
}

int run_herald(const StateSpec& state, const HeraldConfig& cfg, double tail_epsilon, std::ostream& out) {
  cfg.validate();
  const auto prior = build_distribution(state, tail_epsilon);
  const auto analytic = subtract(prior, 1).dist;
  const double exact_rate = exact_success_probability(prior, cfg.p);
  const auto result = simulate_heralded_subtraction(prior, cfg);
  const double sigma = std::sqrt(exact_rate * (1.0 - exact_rate) / static_cast<double>(cfg.samples));
  out << "{\n";
  out << "  \"state\": " << quote(std::string(family_name(state.family))) << ",\n";
  out << "  \"params\": " << json_params(state) << ",\n";
  out << "  \"config\": {\"p\": " << json_number(cfg.p) << ", \"samples\": " << cfg.samples
      << ", \"seed\": " << cfg.seed << ", \"rng_algorithm\": " << quote(result.rng_algorithm) << "},\n";
  out << "  \"accepted\": " << result.accepted << ",\n";
  out << "  \"success_rate\": " << json_number(result.success_rate) << ",\n";
  out << "  \"exact_success_rate\": " << json_number(exact_rate) << ",\n";
  out << "  \"success_rate_sigma\": " << json_number(sigma) << ",\n";
  out << "  \"empirical_conditional\": " << json_array(result.empirical_conditional.probs()) << ",\n";
  out << "  \"tv_to_subtract\": " << json_number(total_variation(result.empirical_conditional, analytic)) << ",\n";
  out << "  \"exact_conditional_tv_to_subtract\": "
      << json_number(total_variation(exact_heralded_conditional(prior, cfg.p), analytic)) << ",\n";
  out << "  \"meta\": {\"version\": " << quote(kVersion) << ", \"tail_epsilon\": " << json_number(tail_epsilon)
      << "}\n";
  out << "}\n";
  return kOk;
}

void add_state_flags(CLI::App* cmd, StateFlags& flags) {
  cmd->add_option("--state", flags.family,
                  "fock|coherent|thermal|squeezed|cat-even|cat-odd|binomial|negbinomial|agarwal")
      ->required();
  cmd->add_option("--n", flags.n, "Fock photon number");
  cmd->add_option("--a2", flags.a2, "|alpha|^2 for coherent and cat states");
  cmd->add_option("--nbar", flags.nbar, "mean photon number for thermal and squeezed states");
  cmd->add_option("--eta", flags.eta, "eta for binomial-type states");
  cmd->add_option("--m", flags.m, "M for binomial-type states");
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double default_tail_epsilon() {
  const char* env = std::getenv("PHOTONSTAT_TAIL_EPS");
  if (env == nullptr || *env == '\0') return kDefaultTailEpsilon;
  return parse_number(env, "PHOTONSTAT_TAIL_EPS");
}

PipelineOp parse_op(const std::string& text, std::size_t index) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParameterError(op_label(index, text) + ": expected kind:value with kind in sub, add, att, amp");
  }
  const std::string kind = text.substr(0, colon);
  const std::string value = text.substr(colon + 1);
  PipelineOp op;
  op.text = text;
  if (kind == "sub") {
    op.kind = PipelineOpKind::Sub;
  } else if (kind == "add") {
    op.kind = PipelineOpKind::Add;
  } else if (kind == "att") {
    op.kind = PipelineOpKind::Att;
  } else if (kind == "amp") {
    op.kind = PipelineOpKind::Amp;
  } else {
    throw ParameterError(op_label(index, text) + ": unknown kind '" + kind + "'");
  }
  op.value = parse_number(value, op_label(index, text));
  switch (op.kind) {
    case PipelineOpKind::Sub:
    case PipelineOpKind::Add:
      if (op.value < 0 || op.value != std::floor(op.value) || op.value > 1e6) {
        throw ParameterError(op_label(index, text) + ": photon count must be a non-negative integer");
      }
      break;
    case PipelineOpKind::Att:
      if (!(op.value >= 0.0 && op.value <= 1.0)) {
        throw ParameterError(op_label(index, text) + ": transmission must lie in [0, 1]");
      }
      break;
    case PipelineOpKind::Amp:
      if (!(op.value >= 1.0)) throw ParameterError(op_label(index, text) + ": gain must be >= 1");
      break;
  }
  return op;
}

MgfGrid parse_mgf_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw ParameterError("--mgf-grid: expected start:stop:steps");
  MgfGrid grid;
  grid.start = parse_number(text.substr(0, a), "--mgf-grid start");
  grid.stop = parse_number(text.substr(a + 1, b - a - 1), "--mgf-grid stop");
  const double steps = parse_number(text.substr(b + 1), "--mgf-grid steps");
  if (steps < 1 || steps != std::floor(steps) || steps > 100000) {
    throw ParameterError("--mgf-grid: steps must be an integer in [1, 100000]");
  }
  grid.steps = static_cast<std::size_t>(steps);
  return grid;
}

StateSpec make_state(const StateFlags& flags) {
  const Family family = parse_family(flags.family);
  const bool wants_n = family == Family::Fock;
  const bool wants_a2 = family == Family::Coherent || family == Family::CatEven || family == Family::CatOdd;
  const bool wants_nbar = family == Family::Thermal || family == Family::SqueezedVacuum;
  const bool wants_eta_m =
      family == Family::Binomial || family == Family::NegBinomial || family == Family::AgarwalNegBinomial;
  auto check = [&](bool given, bool wanted, const char* flag) {
    if (given && !wanted) throw ParameterError(std::string(flag) + " does not apply to state " + flags.family);
    if (!given && wanted) throw ParameterError("state " + flags.family + " requires " + flag);
  };
  check(flags.n.has_value(), wants_n, "--n");
  check(flags.a2.has_value(), wants_a2, "--a2");
  check(flags.nbar.has_value(), wants_nbar, "--nbar");
  check(flags.eta.has_value(), wants_eta_m, "--eta");
  check(flags.m.has_value(), wants_eta_m, "--m");
  StateSpec spec;
  switch (family) {
    case Family::Fock:
      spec = StateSpec::fock(*flags.n);
      break;
    case Family::Coherent:
      spec = StateSpec::coherent(*flags.a2);
      break;
    case Family::Thermal:
      spec = StateSpec::thermal(*flags.nbar);
      break;
    case Family::SqueezedVacuum:
      spec = StateSpec::squeezed(*flags.nbar);
      break;
    case Family::CatEven:
      spec = StateSpec::cat_even(*flags.a2);
      break;
    case Family::CatOdd:
      spec = StateSpec::cat_odd(*flags.a2);
      break;
    case Family::Binomial:
      spec = StateSpec::binomial(*flags.eta, *flags.m);
      break;
    case Family::NegBinomial:
      spec = StateSpec::negbinomial(*flags.eta, *flags.m);
      break;
    case Family::AgarwalNegBinomial:
      spec = StateSpec::agarwal(*flags.eta, *flags.m);
      break;
  }
  spec.validate();
  return spec;
}

PipelineResult run_pipeline(const PipelineRequest& request) {
  if (request.ops.size() > kMaxOps) throw ParameterError("at most 16 ops per pipeline");
  if (!(request.tail_epsilon > 0.0 && request.tail_epsilon < 1.0)) {
    throw ParameterError("tail epsilon must lie in (0, 1)");
  }
  PipelineResult res{build_distribution(request.state, request.tail_epsilon), {}};
  for (std::size_t i = 0; i < request.ops.size(); ++i) {
    const auto& op = request.ops[i];
    const std::string where = op_label(i + 1, op.text);
    AppliedOp applied{op, 1.0};
    try {
      switch (op.kind) {
        case PipelineOpKind::Sub:
        case PipelineOpKind::Add: {
          const auto count = static_cast<unsigned>(op.value);
          if (count == 0) break;
          auto r = op.kind == PipelineOpKind::Sub ? subtract(res.dist, count) : add(res.dist, count);
          res.dist = std::move(r.dist);
          applied.success_norm = r.record.success_norm;
          break;
        }
        case PipelineOpKind::Att:
          res.dist = attenuate(res.dist, op.value);
          break;
        case PipelineOpKind::Amp:
          res.dist = amplify(res.dist, op.value, request.tail_epsilon);
          break;
      }
    } catch (const ImpossibleEventError& e) {
      throw ImpossibleEventError(where + ": " + e.what());
    } catch (const ParameterError& e) {
      throw ParameterError(where + ": " + e.what());
    } catch (const DomainError& e) {
      throw DomainError(where + ": " + e.what());
    }
    res.applied.push_back(applied);
  }
  return res;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact photon-number statistics of photon-subtracted and photon-added states", "photonstat"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::optional<double> tail_eps;

  StateFlags dist_flags;
  std::vector<std::string> op_texts;
  unsigned moment_order = 2;
  std::string mgf_grid;
  std::string format = "json";
  auto* dist = app.add_subcommand("dist", "Distribution, moments and MGFs after an operation pipeline");
  add_state_flags(dist, dist_flags);
  dist->add_option("--op", op_texts, "sub:l | add:l | att:eta | amp:G, applied left to right (repeatable)");
  dist->add_option("--moments", moment_order, "highest factorial-moment order K");
  dist->add_option("--mgf-grid", mgf_grid, "start:stop:steps grid for M and N");
  dist->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  dist->add_option("--tail-eps", tail_eps, "truncation tail bound");

  int figure_id = 0;
  auto* figure = app.add_subcommand("figure", "CSV data for figures 3, 4 and 5");
  figure->add_option("id", figure_id, "figure id")->required()->check(CLI::IsMember({3, 4, 5}));

  std::string pattern;
  std::string input;
  double tamper = 0.0;
  auto* verify = app.add_subcommand("verify", "Differential test of every catalog entry");
  verify->add_option("pattern", pattern, "glob over entry ids, e.g. 'thermal-*'");
  verify->add_option("--input", input, "check that a dist JSON document reproduces exactly");
  verify->add_option("--tail-eps", tail_eps, "truncation tail bound");
  verify->add_option("--debug-tamper-p0", tamper)->group("");

  StateFlags herald_flags;
  HeraldConfig herald_cfg;
  auto* herald = app.add_subcommand("herald", "Monte Carlo heralded single-photon subtraction");
  add_state_flags(herald, herald_flags);
  herald->add_option("--p", herald_cfg.p, "per-photon coupling probability");
  herald->add_option("--samples", herald_cfg.samples, "Monte Carlo samples");
  herald->add_option("--seed", herald_cfg.seed, "RNG seed");
  herald->add_option("--tail-eps", tail_eps, "truncation tail bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParameterError;
  }

  try {
    const double eps = tail_eps ? *tail_eps : default_tail_epsilon();
    if (*dist) {
      if (op_texts.size() > kMaxOps) throw ParameterError("at most 16 ops per pipeline");
      PipelineRequest req;
      req.state = make_state(dist_flags);
      for (std::size_t i = 0; i < op_texts.size(); ++i) req.ops.push_back(parse_op(op_texts[i], i + 1));
      req.moments = moment_order;
      if (!mgf_grid.empty()) req.mgf_grid = parse_mgf_grid(mgf_grid);
      req.format = format;
      req.tail_epsilon = eps;
      const auto res = run_pipeline(req);
      const auto mom = moments(res.dist, req.moments);
      std::ostringstream buf;
      if (format == "csv") {
        emit_dist_csv(buf, req, res, mom);
      } else {
        emit_dist_json(buf, req, res, mom);
      }
      out << buf.str();
      return kOk;
    }
    if (*figure) {
      emit_figure(out, figure_id);
      return kOk;
    }
    if (*verify) {
      if (!input.empty()) return verify_input(input, out, err);
      if (!std::isfinite(tamper)) throw ParameterError("--debug-tamper-p0 must be finite");
      if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("tail epsilon must lie in (0, 1)");
      return run_verify(pattern, catalog::VerifyContext{eps, tamper}, out, err);
    }
    if (*herald) {
      if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("tail epsilon must lie in (0, 1)");
      std::ostringstream buf;
      const int code = run_herald(make_state(herald_flags), herald_cfg, eps, buf);
      out << buf.str();
      return code;
    }
  } catch (const ImpossibleEventError& e) {
    err << "error: impossible event: " << e.what() << '\n';
    return kImpossibleEvent;
  } catch (const InsufficientStatisticsError& e) {
    err << "error: insufficient statistics: " << e.what() << '\n';
    return kInsufficientStatistics;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kParameterError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kParameterError;
  }
  return kParameterError;
}

}  // namespace photonstat::cli
