#include "expfact/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "expfact/error.hpp"

namespace expfact::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

json coeffs_to_json(std::span<const cplx> c) {
  json out = json::array();
  for (const cplx z : c) out.push_back(to_json(z));
  return out;
}

Polynomial coeffs_from_json(const json& j) {
  if (!j.is_array()) bad("polynomial coefficients must be an array");
  std::vector<cplx> c;
  for (const auto& e : j) c.push_back(complex_from_json(e));
  return Polynomial(std::move(c));
}

json circle_to_json(const Circle& c) { return json{{"center", to_json(c.center)}, {"radius", c.radius}}; }

Circle circle_from_json(const json& j) {
  return {complex_from_json(field(j, "center")), number(field(j, "radius"), "radius")};
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) bad("complex value must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

json to_json(const Domain& d) {
  json holes = json::array();
  for (const auto& h : d.holes()) holes.push_back(circle_to_json(h));
  return json{{"outer", circle_to_json(d.outer())},
              {"holes", holes},
              {"boundary_n", d.boundary_n()},
              {"interior_spacing", d.interior_spacing()}};
}

Domain domain_from_json(const json& j, std::optional<int> boundary_n, std::optional<double> spacing) {
  const Circle outer = circle_from_json(field(j, "outer"));
  std::vector<Circle> holes;
  if (j.contains("holes")) {
    if (!j["holes"].is_array()) bad("holes must be an array");
    for (const auto& h : j["holes"]) holes.push_back(circle_from_json(h));
  }
  int n = Domain::kDefaultBoundaryN;
  if (j.contains("boundary_n")) {
    if (!j["boundary_n"].is_number_integer()) bad("boundary_n must be an integer");
    n = j["boundary_n"].get<int>();
  }
  double h = j.contains("interior_spacing") ? number(j["interior_spacing"], "interior_spacing") : 0.0;
  if (boundary_n) n = *boundary_n;
  if (spacing) h = *spacing;
  if (n < 8) bad("boundary_n must be at least 8");
  if (h < 0.0) bad("interior_spacing must be positive");
  return Domain::make(outer, std::move(holes), n, h);
}

json to_json(const RationalFn& f) {
  return json{{"num", coeffs_to_json(f.num().coeffs())}, {"den", coeffs_to_json(f.den().coeffs())}};
}

RationalFn rational_from_json(const json& j) {
  if (j.is_number() || j.is_array()) return RationalFn(complex_from_json(j));
  const Polynomial num = coeffs_from_json(field(j, "num"));
  const Polynomial den = j.contains("den") ? coeffs_from_json(j["den"]) : Polynomial::constant(1.0);
  if (den.is_zero()) bad("denominator is identically zero");
  return RationalFn(num, den);
}

json to_json(const RatMat& m) {
  return json{{"entries", json::array({json::array({to_json(m.a), to_json(m.b)}),
                                       json::array({to_json(m.c), to_json(m.d)})})}};
}

RatMat matrix_from_json(const json& j) {
  const json& e = field(j, "entries");
  if (!e.is_array() || e.size() != 2 || !e[0].is_array() || !e[1].is_array() || e[0].size() != 2 ||
      e[1].size() != 2)
    bad("entries must be a 2x2 array");
  return {rational_from_json(e[0][0]), rational_from_json(e[0][1]), rational_from_json(e[1][0]),
          rational_from_json(e[1][1])};
}

json to_json(const Mat2& m) {
  return json::array({json::array({to_json(m.a), to_json(m.b)}), json::array({to_json(m.c), to_json(m.d)})});
}

Mat2 mat2_from_json(const json& j) {
  const json& e = j.is_object() ? field(j, "entries") : j;
  if (!e.is_array() || e.size() != 2 || !e[0].is_array() || !e[1].is_array() || e[0].size() != 2 ||
      e[1].size() != 2)
    bad("matrix must be a 2x2 array");
  return {complex_from_json(e[0][0]), complex_from_json(e[0][1]), complex_from_json(e[1][0]),
          complex_from_json(e[1][1])};
}

std::string to_string(SplitMethod m) { return m == SplitMethod::Exact ? "exact" : "dbar"; }

SplitMethod split_method_from_string(const std::string& s) {
  if (s == "exact") return SplitMethod::Exact;
  if (s == "dbar") return SplitMethod::Dbar;
  bad("method must be 'exact' or 'dbar', got '" + s + "'");
}

json to_json(const Instance& inst) {
  json opts = json::object();
  if (inst.opts.tol) opts["tol"] = *inst.opts.tol;
  if (inst.opts.method) opts["method"] = to_string(*inst.opts.method);
  if (inst.opts.boundary_n) opts["boundary_n"] = *inst.opts.boundary_n;
  if (inst.opts.interior_spacing) opts["interior_spacing"] = *inst.opts.interior_spacing;
  return json{{"domain", to_json(inst.domain)}, {"matrix", to_json(inst.matrix)}, {"opts", opts}};
}

Instance instance_from_json(const json& j) {
  InstanceOptions o;
  if (j.contains("opts")) {
    const json& jo = j["opts"];
    if (!jo.is_object()) bad("opts must be an object");
    if (jo.contains("tol") && !jo["tol"].is_null()) {
      o.tol = number(jo["tol"], "tol");
      if (!(*o.tol > 0.0)) bad("tol must be positive");
    }
    if (jo.contains("method") && !jo["method"].is_null()) {
      if (!jo["method"].is_string()) bad("method must be a string");
      o.method = split_method_from_string(jo["method"].get<std::string>());
    }
    if (jo.contains("boundary_n") && !jo["boundary_n"].is_null()) {
      if (!jo["boundary_n"].is_number_integer()) bad("boundary_n must be an integer");
      o.boundary_n = jo["boundary_n"].get<int>();
    }
    if (jo.contains("interior_spacing") && !jo["interior_spacing"].is_null())
      o.interior_spacing = number(jo["interior_spacing"], "interior_spacing");
  }
  Domain d = domain_from_json(field(j, "domain"), o.boundary_n, o.interior_spacing);
  return {std::move(d), matrix_from_json(field(j, "matrix")), o};
}

json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) bad("cannot open '" + p.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad("'" + p.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) bad("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) bad("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, p);
}

void write_json_file(const std::filesystem::path& p, const json& j) { write_text_file(p, j.dump(2) + "\n"); }

std::string gridfn_csv(const GridFn& f) {
  const Domain& d = f.domain();
  const auto pts = d.points();
  std::string out = "re_z,im_z,re_f,im_f,tag\n";
  const std::size_t nb = d.boundary_size();
  for (std::size_t i = 0; i < d.size(); ++i) {
    const std::string tag = i < nb ? "boundary_" + std::to_string(i / d.boundary_n()) : "interior";
    out += format_double(pts[i].real()) + ',' + format_double(pts[i].imag()) + ',' + format_double(f[i].real()) +
           ',' + format_double(f[i].imag()) + ',' + tag + '\n';
  }
  return out;
}

void write_gridfn_csv(const std::filesystem::path& p, const GridFn& f) { write_text_file(p, gridfn_csv(f)); }

GridFn read_gridfn_csv(const std::filesystem::path& p, const Domain& d) {
  std::ifstream in(p);
  if (!in) bad("cannot open '" + p.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "re_z,im_z,re_f,im_f,tag") bad("'" + p.string() + "' lacks the CSV header");
  const auto pts = d.points();
  std::vector<cplx> v;
  v.reserve(d.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell[5];
    for (auto& c : cell)
      if (!std::getline(row, c, ',')) bad("malformed CSV row in '" + p.string() + "'");
    double x[4];
    for (int k = 0; k < 4; ++k) {
      std::size_t used = 0;
      try {
        x[k] = std::stod(cell[k], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell[k].size()) bad("non-numeric CSV cell '" + cell[k] + "'");
    }
    const std::size_t i = v.size();
    if (i >= pts.size() || pts[i] != cplx(x[0], x[1])) bad("CSV grid points do not match the domain");
    v.emplace_back(x[2], x[3]);
  }
  if (v.size() != pts.size()) bad("CSV has " + std::to_string(v.size()) + " rows, domain has " +
                                  std::to_string(pts.size()) + " points");
  return GridFn(d, std::move(v));
}

}  // namespace expfact::io
