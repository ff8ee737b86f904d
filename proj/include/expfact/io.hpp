#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "expfact/cousin.hpp"
#include "expfact/domain.hpp"
#include "expfact/gridfn.hpp"
#include "expfact/mat2.hpp"
#include "expfact/matfn.hpp"
#include "expfact/rational.hpp"

namespace expfact::io {

using json = nlohmann::ordered_json;

/// 17 significant digits; round-trips every finite double.
std::string format_double(double x);

json to_json(cplx z);
cplx complex_from_json(const json& j);

/// {"outer":{"center":[re,im],"radius":r},"holes":[...],"boundary_n":n,"interior_spacing":h}
json to_json(const Domain& d);
Domain domain_from_json(const json& j, std::optional<int> boundary_n = {}, std::optional<double> spacing = {});

/// {"num":[[re,im],...],"den":[[re,im],...]}, ascending degree. A bare
/// [re,im] pair or a real number reads as a constant.
json to_json(const RationalFn& f);
RationalFn rational_from_json(const json& j);

/// {"entries":[[a,b],[c,d]]} with rational entries.
json to_json(const RatMat& m);
RatMat matrix_from_json(const json& j);

/// [[a,b],[c,d]] with complex entries, or {"entries": ...}.
json to_json(const Mat2& m);
Mat2 mat2_from_json(const json& j);

std::string to_string(SplitMethod m);
SplitMethod split_method_from_string(const std::string& s);

struct InstanceOptions {
  std::optional<double> tol;
  std::optional<SplitMethod> method;
  std::optional<int> boundary_n;
  std::optional<double> interior_spacing;
};

struct Instance {
  Domain domain;
  RatMat matrix;
  InstanceOptions opts;
};

/// {domain, matrix, opts{tol, method, boundary_n, interior_spacing}}. The
/// grid settings in opts override those of the domain descriptor.
json to_json(const Instance& inst);
Instance instance_from_json(const json& j);

/// Any parse or schema problem surfaces as InvalidInput.
json read_json_file(const std::filesystem::path& p);
/// Writes to a temporary sibling and renames it into place.
void write_text_file(const std::filesystem::path& p, const std::string& text);
void write_json_file(const std::filesystem::path& p, const json& j);

/// Columns re_z, im_z, re_f, im_f, tag with tag boundary_k or interior, one
/// row per grid point in domain order.
std::string gridfn_csv(const GridFn& f);
void write_gridfn_csv(const std::filesystem::path& p, const GridFn& f);
/// Rows must list the points of d in order.
GridFn read_gridfn_csv(const std::filesystem::path& p, const Domain& d);

}  // namespace expfact::io
