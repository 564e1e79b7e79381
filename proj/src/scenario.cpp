#include "redukit/scenario.hpp"

#include "redukit/error.hpp"

#include <fstream>
#include <optional>

namespace redukit {

using nlohmann::json;

json matrix_to_json(const Mat& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw Error(ErrorCode::LoadError, "expected a matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw Error(ErrorCode::LoadError, "ragged matrix");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!j[i][c].is_number()) throw Error(ErrorCode::LoadError, "non-numeric matrix entry");
      a(i, c) = j[i][c].get<double>();
    }
  }
  return a;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vec vector_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::LoadError, "expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::LoadError, "expected an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

namespace {

// A g element given either by coordinates or as an n x n matrix.
Vec algebra_element(const LieAlgebra& g, const json& j, const std::string& what) {
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    const Mat x = matrix_from_json(j);
    if (x.rows() != g.ambient_dim() || x.cols() != g.ambient_dim()) {
      throw Error(ErrorCode::LoadError, what + ": matrix has wrong size");
    }
    if (g.coordinate_residual(x) > 1e-9 * (1.0 + x.norm())) {
      throw Error(ErrorCode::LoadError, what + ": matrix is not in g");
    }
    return g.coordinates(x);
  }
  Vec c = vector_from_json(j);
  if (c.size() != g.dim()) throw Error(ErrorCode::LoadError, what + ": coordinate vector has wrong length");
  return c;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

Scenario parse_scenario(const json& j) {
  try {
    Scenario sc;
    const int version = j.at("schema_version").get<int>();
    if (version != kScenarioSchemaVersion) {
      throw Error(ErrorCode::LoadError, "unsupported schema_version " + std::to_string(version));
    }
    sc.name = j.at("name").get<std::string>();
    sc.ambient_dim = j.at("ambient_dim").get<int>();
    if (sc.ambient_dim < 1) throw Error(ErrorCode::LoadError, "ambient_dim must be positive");

    for (const auto& b : j.at("g_basis")) {
      Mat x = matrix_from_json(b);
      if (x.rows() != sc.ambient_dim || x.cols() != sc.ambient_dim) {
        throw Error(ErrorCode::LoadError, "g_basis element is not ambient_dim x ambient_dim");
      }
      sc.g_basis.push_back(std::move(x));
    }
    if (sc.g_basis.empty()) throw Error(ErrorCode::LoadError, "g_basis is empty");
    const LieAlgebra g(sc.g_basis, get_or(j.value("tolerances", json::object()), "rank", kRankTol));
    const int d = g.dim();

    const json& hb = j.at("h_basis");
    sc.h_coords.resize(d, static_cast<Eigen::Index>(hb.size()));
    for (std::size_t i = 0; i < hb.size(); ++i) {
      sc.h_coords.col(static_cast<Eigen::Index>(i)) = algebra_element(g, hb[i], "h_basis");
    }

    const json& rep = j.at("rep");
    sc.rep.dim = rep.at("dim").get<int>();
    if (sc.rep.dim < 0) throw Error(ErrorCode::LoadError, "rep.dim must be non-negative");
    for (const auto& m : rep.at("drho")) {
      Mat x = sc.rep.dim == 0 ? Mat(0, 0) : matrix_from_json(m);
      if (x.rows() != sc.rep.dim || x.cols() != sc.rep.dim) {
        throw Error(ErrorCode::LoadError, "drho element is not rep.dim x rep.dim");
      }
      sc.rep.drho.push_back(std::move(x));
    }
    if (static_cast<int>(sc.rep.drho.size()) != d) {
      throw Error(ErrorCode::LoadError, "rep.drho has " + std::to_string(sc.rep.drho.size()) +
                                            " entries for a " + std::to_string(d) + "-dimensional g");
    }

    for (const auto& w : j.value("omega", json::array())) {
      GroupElement ge;
      for (const auto& f : w.at("factors")) {
        const Vec c = vector_from_json(f);
        if (c.size() != sc.h_coords.cols()) {
          throw Error(ErrorCode::LoadError, "omega factor must have one coefficient per h_basis element");
        }
        ge.factors.push_back(sc.h_coords * c);
      }
      sc.omega.push_back(std::move(ge));
    }
    sc.reduce_omega = j.value("reduce_omega", true);

    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      sc.tolerances.rank = get_or(t, "rank", sc.tolerances.rank);
      sc.tolerances.newton = get_or(t, "newton", sc.tolerances.newton);
      sc.tolerances.verify = get_or(t, "verify", sc.tolerances.verify);
    }
    if (j.contains("sampling")) {
      const json& s = j.at("sampling");
      sc.sampling.seed = get_or<std::uint64_t>(s, "seed", sc.sampling.seed);
      sc.sampling.count = get_or(s, "count", sc.sampling.count);
      sc.sampling.radius = get_or(s, "radius", sc.sampling.radius);
    }
    if (j.contains("coefficients")) {
      const json& c = j.at("coefficients");
      sc.coefficients.seed = get_or<std::uint64_t>(c, "seed", sc.coefficients.seed);
      sc.coefficients.count = get_or(c, "count", sc.coefficients.count);
      sc.coefficients.max_factors = get_or(c, "max_factors", sc.coefficients.max_factors);
      sc.coefficients.coefficient_range = get_or(c, "range", sc.coefficients.coefficient_range);
    }
    if (j.contains("mostow")) {
      sc.mostow.count = get_or(j.at("mostow"), "count", sc.mostow.count);
      sc.mostow.radius = get_or(j.at("mostow"), "radius", sc.mostow.radius);
    }
    if (j.contains("focusing")) {
      const json& f = j.at("focusing");
      if (f.contains("v")) sc.focusing.v = vector_from_json(f.at("v"));
      if (f.contains("grid")) sc.focusing.grid = f.at("grid").get<std::vector<double>>();
      sc.focusing.threshold_a = get_or(f, "threshold_a", sc.focusing.threshold_a);
      sc.focusing.threshold_b = get_or(f, "threshold_b", sc.focusing.threshold_b);
      for (const auto& fam : f.value("families", json::array())) {
        Family family;
        family.name = fam.at("name").get<std::string>();
        for (const auto& fac : fam.at("factors")) {
          FamilyFactor ff;
          ff.offset = fac.contains("offset") ? algebra_element(g, fac.at("offset"), "family offset") : Vec(Vec::Zero(d));
          ff.slope = fac.contains("slope") ? algebra_element(g, fac.at("slope"), "family slope") : Vec(Vec::Zero(d));
          family.factors.push_back(std::move(ff));
        }
        sc.focusing.families.push_back(std::move(family));
      }
    }
    if (sc.focusing.v.size() != 0 && sc.focusing.v.size() != sc.rep.dim) {
      throw Error(ErrorCode::LoadError, "focusing.v has wrong length");
    }
    const std::string policy = j.value("q_policy", std::string("strict"));
    if (policy == "strict") {
      sc.policy = AmbiguityPolicy::Strict;
    } else if (policy == "nearest_identity") {
      sc.policy = AmbiguityPolicy::NearestIdentity;
    } else {
      throw Error(ErrorCode::LoadError, "unknown q_policy '" + policy + "'");
    }
    return sc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::LoadError, e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::LoadError, "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::LoadError, path.string() + ": " + e.what());
  }
  return parse_scenario(j);
}

Context build_context(const Scenario& sc) {
  const double tol = sc.tolerances.rank;
  LieAlgebra g(sc.g_basis, tol);
  const double hom = homomorphism_residual(g, sc.rep);
  if (hom > 1e-8) {
    throw Error(ErrorCode::ValidationFailed, "representation property fails by " + std::to_string(hom));
  }
  Subalgebra h = sc.h_coords.cols() == 0 ? Subalgebra{Subspace::zero(g.dim()), 0.0}
                                         : make_subalgebra(g, sc.h_coords, tol);
  CartanStructure cartan = standard_theta(g, tol);
  ReductivePair pair = build_pair(std::move(g), std::move(h), std::move(cartan), tol);
  CommutantData comm = commutant(sc.rep, pair.h.space, tol);
  AdaptedInnerProduct ip = adapt_inner_product(pair.cartan, sc.rep, sc.policy, tol);
  OmegaSet omega = make_omega(sc.rep, sc.omega);
  return Context{sc, std::move(pair), std::move(comm), std::move(ip), std::move(omega), hom};
}

}  // namespace redukit
