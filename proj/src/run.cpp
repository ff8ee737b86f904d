#include "expfact/run.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "expfact/bass.hpp"
#include "expfact/dbar.hpp"
#include "expfact/error.hpp"
#include "expfact/factorize.hpp"
#include "expfact/instance.hpp"
#include "expfact/io.hpp"
#include "expfact/logm.hpp"

namespace expfact {

namespace fs = std::filesystem;
using io::json;

namespace {

constexpr const char* kCommands[] = {"factorize", "factorize-gl2", "bass", "logm", "dbar-selftest", "gen", "verify"};
constexpr const char* kEntryNames[] = {"a", "b", "c", "d"};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::array<const GridFn*, 4> entries(const GridMat& m) { return {&m.a, &m.b, &m.c, &m.d}; }

json error_json(ErrorKind kind, const std::string& message) {
  return json{{"kind", std::string(to_string(kind))}, {"message", message}};
}

// Outcome of one command: manifest body plus exit code.
struct Outcome {
  json body = json::object();
  json files = json::object();
  int exit_code = 0;
  std::optional<json> error;
};

void fail_gate(Outcome& o, ErrorKind kind, const std::string& message) {
  o.exit_code = 2;
  o.error = error_json(kind, message);
}

json certificates_json(const std::vector<double>& c) {
  json out = json::object();
  for (std::size_t k = 0; k < c.size() && k < 4; ++k) out[kEntryNames[k]] = c[k];
  return out;
}

FactorOptions factor_options(const RunConfig& cfg, const io::InstanceOptions& inst) {
  FactorOptions o;
  o.tol = cfg.tol ? cfg.tol : inst.tol;
  if (const auto m = cfg.method ? cfg.method : inst.method) o.bass.method = *m;
  o.enforce_gates = false;
  return o;
}

io::Instance load_instance(const RunConfig& cfg, const fs::path& p) {
  io::Instance inst = io::instance_from_json(io::read_json_file(p));
  if (cfg.boundary_n || cfg.spacing) {
    const int n = cfg.boundary_n ? *cfg.boundary_n : inst.domain.boundary_n();
    const double h = cfg.spacing ? *cfg.spacing : inst.domain.interior_spacing();
    json dj = io::to_json(inst.domain);
    inst.domain = io::domain_from_json(dj, n, h);
  }
  return inst;
}

void write_factors(Outcome& o, const fs::path& dir, const FactorizationResult& r) {
  for (int k = 0; k < 4; ++k) {
    const std::string e = std::string("E_") + kEntryNames[k] + ".csv";
    const std::string f = std::string("F_") + kEntryNames[k] + ".csv";
    io::write_gridfn_csv(dir / e, *entries(r.E)[k]);
    io::write_gridfn_csv(dir / f, *entries(r.F)[k]);
    o.files["E"][kEntryNames[k]] = e;
    o.files["F"][kEntryNames[k]] = f;
  }
  if (r.h) {
    io::write_gridfn_csv(dir / "h.csv", *r.h);
    o.files["h"] = "h.csv";
  }
  if (r.lambda) {
    io::write_gridfn_csv(dir / "lambda.csv", *r.lambda);
    o.files["lambda"] = "lambda.csv";
  }
  if (r.eta) {
    io::write_gridfn_csv(dir / "eta.csv", *r.eta);
    o.files["eta"] = "eta.csv";
  }
}

Outcome do_factorize(const RunConfig& cfg, const fs::path& input, const fs::path& dir, bool gl2) {
  Outcome o;
  const io::Instance inst = load_instance(cfg, input);
  const FactorOptions opts = factor_options(cfg, inst.opts);
  const FactorizationResult r =
      gl2 ? factorize_gl2(inst.matrix, inst.domain, opts) : factorize_sl2(inst.matrix, inst.domain, opts);
  write_factors(o, dir, r);
  json& b = o.body;
  b["case_tag"] = to_string(r.tag);
  b["trail"] = r.trail;
  b["delta"] = r.delta;
  b["residual"] = r.report.residual;
  b["tol"] = r.tol;
  b["certificates"] = json{{"E", certificates_json(r.report.cert_e)},
                           {"F", certificates_json(r.report.cert_f)},
                           {"max", r.report.max_certificate}};
  b["trace"] = json{{"E", r.report.trace_e}, {"F", r.report.trace_f}};
  b["bass"] = r.bass_branch ? json{{"branch", to_string(*r.bass_branch)},
                                   {"residual", r.bass_residual},
                                   {"theta_eff", r.theta_eff},
                                   {"interior_zeros", r.interior_zeros}}
                            : json(nullptr);
  b["delta_margins"] = json{{"min_real", r.delta_min_real}, {"max_deviation", r.delta_max_dev},
                            {"min_re_theta", r.min_re_theta}};
  b["domain"] = io::to_json(inst.domain);
  if (!r.report.passed) {
    const bool only_certs = r.report.residual <= r.tol;
    std::string msg;
    for (const auto& f : r.report.failures) msg += (msg.empty() ? "" : "; ") + f;
    fail_gate(o, only_certs ? ErrorKind::CertificateTooLarge : ErrorKind::ResidualTooLarge, msg);
  }
  return o;
}

Outcome do_bass(const RunConfig& cfg, const fs::path& input, const fs::path& dir) {
  Outcome o;
  const json j = io::read_json_file(input);
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("domain"))
    throw Error(ErrorKind::InvalidInput, "bass input needs a, b and domain");
  const Domain d = io::domain_from_json(j["domain"], cfg.boundary_n, cfg.spacing);
  BassOptions opts;
  if (j.contains("method") && !j["method"].is_null()) {
    if (!j["method"].is_string()) throw Error(ErrorKind::InvalidInput, "method must be a string");
    opts.method = io::split_method_from_string(j["method"].get<std::string>());
  }
  if (cfg.method) opts.method = *cfg.method;
  const BassSolution s = bass_solve(io::rational_from_json(j["a"]), io::rational_from_json(j["b"]), d, opts);
  io::write_gridfn_csv(dir / "h.csv", s.h());
  io::write_gridfn_csv(dir / "g.csv", s.g());
  json zeros = json::array();
  for (const auto& z : s.cover().zeros.zeros)
    zeros.push_back(json{{"location", io::to_json(z.location)}, {"multiplicity", z.multiplicity}});
  o.body["branch"] = to_string(s.branch());
  o.body["residual"] = s.residual();
  o.body["theta_eff"] = s.cover().theta_eff;
  o.body["zeros"] = zeros;
  o.body["h_csv"] = "h.csv";
  o.body["g_csv"] = "g.csv";
  o.files["h"] = "h.csv";
  o.files["g"] = "g.csv";
  return o;
}

Outcome do_logm(const fs::path& input) {
  Outcome o;
  const json j = io::read_json_file(input);
  if (!j.is_object() || !j.contains("B") || !j.contains("lambda"))
    throw Error(ErrorKind::InvalidInput, "logm input needs B and lambda");
  const Mat2 B = io::mat2_from_json(j["B"]);
  const cplx lambda = io::complex_from_json(j["lambda"]);
  const Mat2 F = log_with_eigenvalue(B, lambda);
  o.body["F"] = json{{"entries", io::to_json(F)}};
  o.body["residuals"] = json{{"exp", relative_deviation(exp_sl2(F), B)}, {"trace", std::abs(F.trace())}};
  return o;
}

Outcome do_dbar_selftest(const RunConfig& cfg, const fs::path& dir) {
  Outcome o;
  const auto rows = dbar_convergence(3);
  std::string csv = "n_r,n_theta,rel_err\n";
  json table = json::array();
  for (const auto& r : rows) {
    csv += std::to_string(r.n_r) + ',' + std::to_string(r.n_theta) + ',' + io::format_double(r.rel_err) + '\n';
    table.push_back(json{{"n_r", r.n_r}, {"n_theta", r.n_theta}, {"rel_err", r.rel_err}});
  }
  io::write_text_file(dir / "convergence.csv", csv);
  o.files["convergence"] = "convergence.csv";
  json ratios = json::array();
  bool ratios_ok = true;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double q = rows[k - 1].rel_err / rows[k].rel_err;
    ratios.push_back(q);
    ratios_ok = ratios_ok && q >= 1.6 && q <= 2.6;
  }
  const Domain disk = Domain::disk(0.0, 1.0, cfg.boundary_n.value_or(Domain::kDefaultBoundaryN), cfg.spacing.value_or(0.0));
  const double cert = off_support_certificate(bump_form(), disk);
  const double tol = cfg.tol.value_or(0.05);
  o.body["table"] = table;
  o.body["ratios"] = ratios;
  o.body["off_support_certificate"] = cert;
  o.body["tol"] = tol;
  if (!(rows.front().rel_err <= tol))
    fail_gate(o, ErrorKind::ResidualTooLarge, "relative error at the default mesh exceeds the tolerance");
  else if (!ratios_ok)
    fail_gate(o, ErrorKind::ResidualTooLarge, "refinement ratio outside [1.6, 2.6]");
  else if (!(cert <= 1e-6))
    fail_gate(o, ErrorKind::CertificateTooLarge, "transform not holomorphic off the support");
  return o;
}

Outcome do_gen(const RunConfig& cfg, const fs::path& dir) {
  Outcome o;
  const Domain d = standard_domain(cfg.domain, cfg.boundary_n.value_or(Domain::kDefaultBoundaryN),
                                   cfg.spacing.value_or(0.0));
  json written = json::array();
  for (int k = 0; k < cfg.count; ++k) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(k);
    io::Instance inst{d, random_instance(seed, d, {cfg.zeros, {}}), {}};
    inst.opts.tol = cfg.tol;
    inst.opts.method = cfg.method;
    const std::string name = "instance_" + cfg.domain + "_z" + std::to_string(cfg.zeros) + "_s" +
                             std::to_string(seed) + ".json";
    io::write_json_file(dir / name, io::to_json(inst));
    written.push_back(name);
  }
  o.body["domain"] = cfg.domain;
  o.body["seed"] = cfg.seed;
  o.body["zeros"] = cfg.zeros;
  o.body["count"] = cfg.count;
  o.files["instances"] = written;
  return o;
}

Outcome do_verify(const RunConfig& cfg, const fs::path& input) {
  Outcome o;
  const io::Instance inst = load_instance(cfg, input);
  const fs::path fdir = cfg.factors_dir.empty() ? cfg.out_dir : cfg.factors_dir;
  double tol = 1e-6;
  if (fs::exists(fdir / "manifest.json")) {
    const json m = io::read_json_file(fdir / "manifest.json");
    if (m.contains("tol") && m["tol"].is_number()) tol = m["tol"].get<double>();
  }
  if (inst.opts.tol) tol = *inst.opts.tol;
  if (cfg.tol) tol = *cfg.tol;
  auto read = [&](const char* prefix, int k) {
    return io::read_gridfn_csv(fdir / (std::string(prefix) + kEntryNames[k] + ".csv"), inst.domain);
  };
  const GridMat E{read("E_", 0), read("E_", 1), read("E_", 2), read("E_", 3)};
  const GridMat F{read("F_", 0), read("F_", 1), read("F_", 2), read("F_", 3)};
  // A general linear input carries its scalar part in E; skip the trace gate then.
  const bool unimodular = identically_equal(inst.matrix.det(), RationalFn(1.0), 1e-10);
  const VerifyReport rep = verify(GridMat::sample(inst.domain, inst.matrix), E, F, tol, 1e-5,
                                  unimodular ? 1e-10 : 1e300);
  o.body["residual"] = rep.residual;
  o.body["tol"] = tol;
  o.body["certificates"] =
      json{{"E", certificates_json(rep.cert_e)}, {"F", certificates_json(rep.cert_f)}, {"max", rep.max_certificate}};
  o.body["trace"] = json{{"E", rep.trace_e}, {"F", rep.trace_f}};
  if (!rep.passed) {
    std::string msg;
    for (const auto& f : rep.failures) msg += (msg.empty() ? "" : "; ") + f;
    fail_gate(o, rep.residual <= tol ? ErrorKind::CertificateTooLarge : ErrorKind::ResidualTooLarge, msg);
  }
  return o;
}

// Runs f, mapping exceptions onto the exit-code taxonomy, and writes the
// manifest into dir.
template <class Fn>
Outcome guarded(const RunConfig& cfg, const fs::path& dir, const std::optional<fs::path>& input, Fn&& f) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    fs::create_directories(dir);
    o = f();
  } catch (const Error& e) {
    o = Outcome{};
    o.exit_code = is_gate_failure(e.kind()) ? 2 : 1;
    o.error = error_json(e.kind(), e.what());
  } catch (const std::exception& e) {
    o = Outcome{};
    o.exit_code = 1;
    o.error = error_json(ErrorKind::InvalidInput, e.what());
  }
  json m = json::object();
  m["command"] = cfg.command;
  m["input"] = input ? json(input->string()) : json(nullptr);
  m["status"] = o.exit_code == 0 ? "pass" : (o.exit_code == 2 ? "fail" : "error");
  m["exit_code"] = o.exit_code;
  m["error"] = o.error ? *o.error : json(nullptr);
  for (const auto& [k, v] : o.body.items()) m[k] = v;
  m["files"] = o.files;
  if (!cfg.omit_timing) m["timing"] = json{{"wall_seconds", seconds_since(t0)}};
  o.body = std::move(m);
  try {
    io::write_json_file(dir / "manifest.json", o.body);
  } catch (const std::exception&) {
    if (o.exit_code == 0) o.exit_code = 1;
  }
  return o;
}

ReportRow row_from(const fs::path& input, const Outcome& o) {
  ReportRow r;
  r.instance = input.stem().string();
  const json& m = o.body;
  r.case_tag = m.value("case_tag", std::string("-"));
  r.delta = m.value("delta", 0.0);
  r.residual = m.value("residual", 0.0);
  if (m.contains("certificates")) r.max_certificate = m["certificates"].value("max", 0.0);
  if (m.contains("timing")) r.wall_time = m["timing"].value("wall_seconds", 0.0);
  r.passed = o.exit_code == 0;
  if (o.error) r.error = (*o.error)["kind"].get<std::string>();
  return r;
}

int factorize_many(const RunConfig& cfg, bool gl2) {
  std::vector<ReportRow> rows;
  json list = json::array();
  int worst = 0;
  const bool single = cfg.inputs.size() == 1;
  for (const auto& in : cfg.inputs) {
    const fs::path dir = single ? cfg.out_dir : cfg.out_dir / in.stem();
    const Outcome o = guarded(cfg, dir, in, [&] { return do_factorize(cfg, in, dir, gl2); });
    rows.push_back(row_from(in, o));
    list.push_back(json{{"input", in.string()}, {"dir", single ? "." : in.stem().string()},
                        {"exit_code", o.exit_code}});
    worst = std::max(worst, o.exit_code);
  }
  std::ostringstream csv, text;
  emit_report(rows, csv, text);
  io::write_text_file(cfg.out_dir / "report.csv", csv.str());
  io::write_text_file(cfg.out_dir / "report.txt", text.str());
  if (!single) {
    // Corpus summary; the per-instance manifests live in subdirectories.
    json m = json::object();
    m["command"] = cfg.command;
    m["input"] = nullptr;
    m["status"] = worst == 0 ? "pass" : (worst == 2 ? "fail" : "error");
    m["exit_code"] = worst;
    m["error"] = nullptr;
    m["instances"] = list;
    m["files"] = json{{"report_csv", "report.csv"}, {"report_txt", "report.txt"}};
    io::write_json_file(cfg.out_dir / "manifest.json", m);
  }
  return worst;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (std::find(std::begin(kCommands), std::end(kCommands), cfg.command) == std::end(kCommands))
    throw Error(ErrorKind::InvalidInput, "unknown command '" + cfg.command + "'");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
  if (cfg.spacing && !(*cfg.spacing > 0.0)) throw Error(ErrorKind::InvalidInput, "spacing must be positive");
  if (cfg.boundary_n && *cfg.boundary_n < 8) throw Error(ErrorKind::InvalidInput, "boundary-n must be at least 8");
  const bool needs_input = cfg.command != "gen" && cfg.command != "dbar-selftest";
  if (needs_input && cfg.inputs.empty()) throw Error(ErrorKind::InvalidInput, cfg.command + " needs an input file");
  const bool many_ok = cfg.command == "factorize" || cfg.command == "factorize-gl2";
  if (!many_ok && cfg.inputs.size() > 1) throw Error(ErrorKind::InvalidInput, cfg.command + " takes one input file");
  if (cfg.zeros < 0) throw Error(ErrorKind::InvalidInput, "zeros must be non-negative");
  if (cfg.count < 1) throw Error(ErrorKind::InvalidInput, "count must be at least 1");
}

int run(const RunConfig& cfg) {
  try {
    validate(cfg);
  } catch (const Error& e) {
    const std::optional<fs::path> first = cfg.inputs.empty() ? std::nullopt : std::optional(cfg.inputs.front());
    return guarded(cfg, cfg.out_dir, first, [&]() -> Outcome { throw e; }).exit_code;
  }
  const std::optional<fs::path> input = cfg.inputs.empty() ? std::nullopt : std::optional(cfg.inputs.front());
  const fs::path& dir = cfg.out_dir;
  if (cfg.command == "factorize") return factorize_many(cfg, false);
  if (cfg.command == "factorize-gl2") return factorize_many(cfg, true);
  if (cfg.command == "bass") return guarded(cfg, dir, input, [&] { return do_bass(cfg, *input, dir); }).exit_code;
  if (cfg.command == "logm") return guarded(cfg, dir, input, [&] { return do_logm(*input); }).exit_code;
  if (cfg.command == "dbar-selftest")
    return guarded(cfg, dir, input, [&] { return do_dbar_selftest(cfg, dir); }).exit_code;
  if (cfg.command == "gen") return guarded(cfg, dir, input, [&] { return do_gen(cfg, dir); }).exit_code;
  return guarded(cfg, dir, input, [&] { return do_verify(cfg, *input); }).exit_code;
}

void emit_report(const std::vector<ReportRow>& rows, std::ostream& csv, std::ostream& text) {
  if (rows.empty()) throw Error(ErrorKind::InvalidInput, "report needs at least one result");
  csv << "instance,case_tag,delta,residual,max_certificate,wall_time,passed,error\n";
  for (const auto& r : rows)
    csv << r.instance << ',' << r.case_tag << ',' << io::format_double(r.delta) << ',' << io::format_double(r.residual)
        << ',' << io::format_double(r.max_certificate) << ',' << io::format_double(r.wall_time) << ','
        << (r.passed ? "true" : "false") << ',' << r.error << '\n';

  auto fmt = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return std::string(buf);
  };
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %-6s %10s %10s %10s %9s %s\n", "instance", "case", "delta", "residual",
                "cert", "time[s]", "status");
  text << line;
  std::size_t passed = 0;
  for (const auto& r : rows) {
    passed += r.passed;
    std::snprintf(line, sizeof line, "%-32s %-6s %10g %10s %10s %9.3f %s\n", r.instance.c_str(), r.case_tag.c_str(),
                  r.delta, fmt(r.residual).c_str(), fmt(r.max_certificate).c_str(), r.wall_time,
                  r.passed ? "pass" : ("FAIL " + r.error).c_str());
    text << line;
  }
  auto column = [&](double ReportRow::*field) {
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.*field);
    return v;
  };
  text << "\n" << passed << "/" << rows.size() << " passed\n";
  std::snprintf(line, sizeof line, "%-10s %12s %12s %12s\n", "", "min", "median", "max");
  text << line;
  for (const auto& [name, field] : {std::pair{"delta", &ReportRow::delta}, std::pair{"residual", &ReportRow::residual},
                                    std::pair{"cert", &ReportRow::max_certificate},
                                    std::pair{"time[s]", &ReportRow::wall_time}}) {
    const auto v = column(field);
    std::snprintf(line, sizeof line, "%-10s %12s %12s %12s\n", name, fmt(*std::min_element(v.begin(), v.end())).c_str(),
                  fmt(median(v)).c_str(), fmt(*std::max_element(v.begin(), v.end())).c_str());
    text << line;
  }
}

}  // namespace expfact
