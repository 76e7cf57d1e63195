#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "symfem/assembly.hpp"

namespace symfem {

struct Witness {
  std::string what;
  double computed = 0.0;
  double expected = 0.0;
  std::string relation = "==";  // how computed is compared with expected: ==, <, >, >=, ~ (within tolerance)
  bool pass = false;
};

struct CheckReport {
  std::string name;
  std::vector<std::pair<std::string, int>> params;
  bool pass = true;
  std::vector<Witness> witnesses;

  void add(std::string what, double computed, double expected, std::string relation, bool ok);
  /// "name(n=2, k=3)"
  std::string label() const;
};

void to_json(nlohmann::json& j, const Witness& w);
void to_json(nlohmann::json& j, const CheckReport& r);

/// Both Chu-Vandermonde sums in exact integers, 1 <= n, k <= 12.
CheckReport check_chu_vandermonde(int n, int k);

/// Closed-form dimensions against independent counts (n <= 5) and, for
/// n in {2, 3}, against the ranks of the constructed spaces.
CheckReport check_dimension_formulas(int n, int k);

/// Bubble space: zero normal trace, equal to the zero-trace subspace of
/// P_k(K; S), divergence image of rank dim R_perp orthogonal to R(K).
/// n in {2, 3}, 2 <= k <= 4.
CheckReport check_bubble_lemmas(int n, int k);

/// DOF matrices of the family's local elements on the reference triangle
/// and `trials` random shape-regular triangles (scaled min singular value
/// > kUnisolvenceTolerance). hz2plus also runs the boundary-DOF trace rank
/// test on every cell.
CheckReport check_unisolvence(Family family, int trials, unsigned seed = 20240607);

/// beta_h on levels 1..max_level: square root of the smallest eigenvalue of
/// B (M0 + D)^-1 B^T against the displacement mass, M0 the L2 stress mass
/// and D the div-div matrix. Passes when every beta_h > 0 and beta_h(l) >=
/// 0.9 beta_h(l-1) for l = 3, 4.
CheckReport estimate_infsup(int max_level, Family family);
std::vector<double> infsup_constants(int max_level, Family family);

constexpr double kInfsupRatio = 0.9;

/// Face bubbles on the example face and on 20 random tetrahedra.
CheckReport check_face_bubble_3d();

/// Every check of the default suite whose label contains `filter`, sorted
/// by label. Checks run through parallel_for.
std::vector<CheckReport> run_verify_suite(const std::string& filter = "");

} // namespace symfem
