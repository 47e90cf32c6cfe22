#include "polyq/families.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace polyq {

void GSDParams::validate() const {
  double sq = 0.0;
  for (double l : lambda) {
    if (l < 0.0) throw std::invalid_argument("lambda coefficients must be nonnegative");
    sq += l * l;
  }
  if (std::abs(sq - 1.0) > kNormTol)
    throw std::invalid_argument("lambda squares must sum to 1");
}

void WClassParams::validate() const {
  if (a.size() < 3)
    throw std::invalid_argument("the single-excitation family needs at least 3 parties");
  if (std::abs(a.squaredNorm() - 1.0) > kNormTol)
    throw std::invalid_argument("amplitude moduli squared must sum to 1");
}

PureState gsd_state(const GSDParams& p) {
  p.validate();
  Vec v = Vec::Zero(8);
  v(0) = p.lambda[0];                                          // |000>
  v(4) = p.lambda[1] * cplx(std::cos(p.phi), std::sin(p.phi));  // |100>
  v(5) = p.lambda[2];                                          // |101>
  v(6) = p.lambda[3];                                          // |110>
  v(7) = p.lambda[4];                                          // |111>
  return PureState(std::move(v), 3);
}

GsdCaValues gsd_ca_values(const GSDParams& p) {
  p.validate();
  const double l0 = p.lambda[0];
  const double s2 = p.lambda[2] * p.lambda[2];
  const double s3 = p.lambda[3] * p.lambda[3];
  const double s4 = p.lambda[4] * p.lambda[4];
  GsdCaValues out;
  out.joint = 2.0 * l0 * std::sqrt(s2 + s3 + s4);
  // Sanity anchor for the labeling: with lambda2 = lambda4 = 0 the state
  // lambda0|000> + lambda1 e^{i phi}|100> + lambda3|110> is entangled only
  // within AB, with concurrence 2 lambda0 lambda3 — so the AB pair carries
  // lambda3. (Sources quoting these forms sometimes swap the two labels;
  // the numeric oracle fixes the assignment used here.)
  out.ab = 2.0 * l0 * std::sqrt(s3 + s4);
  out.ac = 2.0 * l0 * std::sqrt(s2 + s4);
  return out;
}

KSolution gsd_k(const GSDParams& p, double mu, double tol) {
  p.validate();
  if (!(p.lambda[2] < p.lambda[3]))
    throw std::invalid_argument(
        "gsd_k requires lambda2 < lambda3; swap the coefficients or use "
        "k_solution directly for the unconstrained form");
  const GsdCaValues v = gsd_ca_values(p);
  return k_solution(v.joint, {v.ab, v.ac}, mu, tol);
}

PureState w_state(const WClassParams& p) {
  p.validate();
  const int n = p.num_qubits();
  Vec v = Vec::Zero(Eigen::Index{1} << n);
  for (int i = 0; i < n; ++i)
    v(Eigen::Index{1} << (n - 1 - i)) = p.a(i);
  return PureState(std::move(v), n);
}

WCaValues w_ca_values(const WClassParams& p) {
  p.validate();
  const int n = p.num_qubits();
  const double a1 = std::abs(p.a(0));
  double tail = 0.0;
  WCaValues out;
  out.pairs.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 1; i < n; ++i) {
    const double ai = std::abs(p.a(i));
    tail += ai * ai;
    out.pairs.push_back(2.0 * a1 * ai);
  }
  out.joint = 2.0 * a1 * std::sqrt(tail);
  return out;
}

GeometryRecord geometry_record(const std::vector<double>& values) {
  GeometryRecord rec;
  if (values.size() == 3) {
    rec.kind = GeometryKind::RightTriangle;
    rec.quantities = {{"hypotenuse", values[0]},
                      {"leg_1", values[1]},
                      {"leg_2", values[2]}};
  } else if (values.size() == 4) {
    rec.kind = GeometryKind::Tetrahedron;
    rec.quantities = {{"face_joint", values[0]},
                      {"face_1", values[1]},
                      {"face_2", values[2]},
                      {"face_3", values[3]}};
  } else {
    throw std::invalid_argument("geometry record needs 3 or 4 values");
  }
  double defect = values[0] * values[0];
  for (std::size_t i = 1; i < values.size(); ++i) defect -= values[i] * values[i];
  rec.defect = defect;
  return rec;
}

FamilyParams load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open family file: " + path);
  nlohmann::json j;
  in >> j;
  const std::string family = j.value("family", "");
  if (family == "gsd") {
    const auto lambda = j.at("lambda").get<std::vector<double>>();
    if (lambda.size() != 5)
      throw std::runtime_error("family file: gsd needs exactly 5 lambda entries");
    double sq = 0.0;
    for (double l : lambda) {
      if (l < 0.0)
        throw std::runtime_error("family file: lambda entries must be nonnegative");
      sq += l * l;
    }
    const double norm = std::sqrt(sq);
    if (std::abs(norm - 1.0) > kFileNormTol)
      throw std::runtime_error("family file: lambda norm deviates from 1 by more than 1e-8");
    GSDParams p;
    for (std::size_t i = 0; i < 5; ++i) p.lambda[i] = lambda[i] / norm;
    p.phi = j.value("phi", 0.0);
    return p;
  }
  if (family == "w") {
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != im.size())
      throw std::runtime_error("family file: re and im lengths differ");
    if (re.size() < 3)
      throw std::runtime_error("family file: w needs at least 3 amplitudes");
    WClassParams p;
    p.a.resize(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i)
      p.a(static_cast<Eigen::Index>(i)) = cplx(re[i], im[i]);
    const double norm = p.a.norm();
    if (std::abs(norm - 1.0) > kFileNormTol)
      throw std::runtime_error("family file: amplitude norm deviates from 1 by more than 1e-8");
    p.a /= norm;
    return p;
  }
  throw std::runtime_error("family file: unknown family \"" + family + "\"");
}

void save_family_file(const FamilyParams& params, const std::string& path) {
  nlohmann::json j;
  if (const auto* gsd = std::get_if<GSDParams>(&params)) {
    j["family"] = "gsd";
    j["lambda"] = std::vector<double>(gsd->lambda.begin(), gsd->lambda.end());
    j["phi"] = gsd->phi;
  } else {
    const auto& w = std::get<WClassParams>(params);
    std::vector<double> re(static_cast<std::size_t>(w.a.size()));
    std::vector<double> im(static_cast<std::size_t>(w.a.size()));
    for (Eigen::Index i = 0; i < w.a.size(); ++i) {
      re[static_cast<std::size_t>(i)] = w.a(i).real();
      im[static_cast<std::size_t>(i)] = w.a(i).imag();
    }
    j["family"] = "w";
    j["re"] = re;
    j["im"] = im;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write family file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace polyq
