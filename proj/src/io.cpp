#include "persuasion/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace persuasion {

namespace {

using nlohmann::json;

json parse_object(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw InstanceError("top level must be an object");
  return j;
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw InstanceError(std::string(name) + ": missing");
  return *it;
}

std::vector<double> numbers(const json& j, const std::string& name) {
  if (!j.is_array()) throw InstanceError(name + ": must be an array");
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number()) throw InstanceError(name + ": entries must be numbers");
    const double d = x.get<double>();
    if (!std::isfinite(d)) throw InstanceError(name + ": entries must be finite");
    v.push_back(d);
  }
  return v;
}

// Re-throws a validation failure with the field name in front.
template <class F>
auto with_field(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const InstanceError& e) {
    const std::string what = e.what();
    if (what.rfind(name + ":", 0) == 0) throw;
    throw InstanceError(name + ": " + what);
  }
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json j = parse_object(text);
  Prior prior = with_field("prior", [&] {
    return Prior(numbers(field(j, "prior"), "prior"));
  });
  ReceiverUtility u = with_field("utility", [&] {
    return ReceiverUtility(numbers(field(j, "utility"), "utility"));
  });
  if (u.size() != prior.size()) {
    throw InstanceError("utility: length differs from prior");
  }
  return {std::move(prior), std::move(u)};
}

FiniteScheme parse_scheme(const std::string& text) {
  const json j = parse_object(text);
  const json& atoms = field(j, "atoms");
  if (!atoms.is_array()) throw InstanceError("atoms: must be an array");
  std::vector<SchemeAtom> out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string at = "atoms[" + std::to_string(k) + "]";
    if (!atoms[k].is_object()) throw InstanceError(at + ": must be an object");
    const json& w = field(atoms[k], "weight");
    if (!w.is_number() || !std::isfinite(w.get<double>())) {
      throw InstanceError(at + ".weight: must be a finite number");
    }
    Posterior p = with_field(at + ".posterior", [&] {
      return Posterior(numbers(field(atoms[k], "posterior"), at + ".posterior"));
    });
    out.push_back({std::move(p), w.get<double>()});
  }
  return with_field("atoms", [&] { return FiniteScheme(std::move(out)); });
}

GridInstance parse_grid_instance(const std::string& text) {
  const json j = parse_object(text);
  const json& d = field(j, "dims");
  if (!d.is_array()) throw InstanceError("dims: must be an array");
  std::vector<std::size_t> dims;
  for (const auto& x : d) {
    if (!x.is_number_unsigned() || x.get<std::size_t>() == 0) {
      throw InstanceError("dims: entries must be positive integers");
    }
    dims.push_back(x.get<std::size_t>());
  }
  std::vector<double> u = numbers(field(j, "utility"), "utility");
  if (dims.empty()) throw InstanceError("dims: must be non-empty");
  if (u.size() != grid_size(dims)) {
    throw InstanceError("utility: needs one entry per grid cell");
  }
  const bool has_m = j.contains("marginals"), has_j = j.contains("joint");
  if (has_m == has_j) {
    throw InstanceError("marginals: give exactly one of marginals or joint");
  }
  if (has_m) {
    const json& m = j["marginals"];
    if (!m.is_array()) throw InstanceError("marginals: must be an array");
    std::vector<std::vector<double>> marg;
    for (std::size_t k = 0; k < m.size(); ++k) {
      marg.push_back(numbers(m[k], "marginals[" + std::to_string(k) + "]"));
    }
    return with_field("marginals", [&] {
      return GridInstance::product(dims, std::move(marg), std::move(u));
    });
  }
  std::vector<double> joint = numbers(j["joint"], "joint");
  return with_field("joint", [&] {
    return GridInstance::joint(dims, std::move(joint), std::move(u));
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("instance: cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace persuasion
