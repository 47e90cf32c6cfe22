#pragma once

#include <array>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polyq/polygamy.hpp"
#include "polyq/state.hpp"

namespace polyq {

// Five-term three-qubit family: lambda0 |000> + lambda1 e^{i phi} |100> +
// lambda2 |101> + lambda3 |110> + lambda4 |111>, lambdas nonnegative with
// squares summing to 1.
struct GSDParams {
  std::array<double, 5> lambda{1.0, 0.0, 0.0, 0.0, 0.0};
  double phi = 0.0;

  void validate() const;
};

// n-qubit single-excitation family: amplitude a_i on the basis state whose
// only 1 sits at position i (party 1 most significant). n >= 3, moduli
// squared summing to 1; complex amplitudes allowed, closed forms use moduli.
struct WClassParams {
  Vec a;

  void validate() const;
  int num_qubits() const { return static_cast<int>(a.size()); }
};

struct GsdCaValues {
  double joint = 0.0;  // assistance value across A|BC
  double ab = 0.0;     // assistance value of the reduced pair AB
  double ac = 0.0;     // assistance value of the reduced pair AC
};

struct WCaValues {
  double joint = 0.0;
  std::vector<double> pairs;  // pair value for A_1A_i, i = 2..n
};

enum class GeometryKind { RightTriangle, Tetrahedron };

// Squared-sum defect of a value tuple, the quantity behind the right-triangle
// and perpendicular-tetrahedron pictures: zero iff the tuple saturates
// joint^2 = sum(parts^2).
struct GeometryRecord {
  GeometryKind kind = GeometryKind::RightTriangle;
  std::vector<std::pair<std::string, double>> quantities;
  double defect = 0.0;
};

PureState gsd_state(const GSDParams& p);

// Closed forms 2 l0 sqrt(l2^2+l3^2+l4^2) (joint), 2 l0 sqrt(l3^2+l4^2) (ab),
// 2 l0 sqrt(l2^2+l4^2) (ac); independent of phi. The pair labels follow the
// numeric oracle on the reduced states, which fixes an ab/ac swap present in
// some quoted versions of these formulas; min/max-based quantities (k, the
// polygamy power) are unaffected by the labeling.
GsdCaValues gsd_ca_values(const GSDParams& p);

// k_solution on the closed-form values under the lambda2 < lambda3
// convention; parameter sets violating the convention are rejected rather
// than silently swapped.
KSolution gsd_k(const GSDParams& p, double mu, double tol = kStrictTol);

PureState w_state(const WClassParams& p);

// Closed forms 2|a_1| sqrt(sum_{i>=2} |a_i|^2) and 2|a_1||a_i|; these
// saturate joint^2 = sum(pairs^2) identically.
WCaValues w_ca_values(const WClassParams& p);

// Length 3 input -> right triangle (joint, two pairs); length 4 ->
// tetrahedron (joint face, three pair faces). defect = joint^2 - sum pairs^2.
GeometryRecord geometry_record(const std::vector<double>& values);

using FamilyParams = std::variant<GSDParams, WClassParams>;

// Family parameter files: {"family":"gsd","lambda":[...],"phi":x} or
// {"family":"w","re":[...],"im":[...]}. Parameter vectors with norm within
// 1e-8 of 1 are renormalized, anything worse is rejected (same policy as
// state files).
FamilyParams load_family_file(const std::string& path);
void save_family_file(const FamilyParams& params, const std::string& path);

}  // namespace polyq
