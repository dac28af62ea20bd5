#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "okb/klyachko.hpp"
#include "okb/polyhedron.hpp"

namespace okb {

inline constexpr std::uint64_t kDefaultAdmissibleCap = 100000;

enum class AdmissibleKind { ASingleton, BSingleton, CMulti };

struct AdmissibleSet {
  AdmissibleKind kind;
  std::vector<std::size_t> rays;  // flag positions, ascending

  friend bool operator==(const AdmissibleSet&, const AdmissibleSet&) = default;
};

std::string to_string(AdmissibleKind k);

// Π(|C_h| + 1) − 1, saturating at UINT64_MAX.
std::uint64_t c_family_count(const FlagContext& ctx);
std::vector<AdmissibleSet> admissible_sets(const FlagContext& ctx, std::uint64_t cap = kDefaultAdmissibleCap);

// γ_j∘ψ = numer / denom over (x_1..x_{n+1}, w_{n+1}..w_d, w).
struct GammaRow {
  IntVector numer;
  Int denom = 1;
};

GammaRow gamma_coeffs(const FlagContext& ctx, std::size_t j);

enum class ProvenanceKind { WAtLeastLast, LastNonnegative, Admissible };

struct Provenance {
  ProvenanceKind kind;
  std::optional<AdmissibleSet> set;
};

std::string describe(const Provenance& p);

// The cone in R^{d+2}; rows[k]·(x, w_{n+1..d}, w) >= 0.
struct GlobalCone {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<IntVector> rows;
  std::vector<Provenance> provenance;

  geom::HPolyhedron cone() const;
  std::vector<std::string> coordinate_names() const;
};

GlobalCone global_cone(const FlagContext& ctx, std::uint64_t cap = kDefaultAdmissibleCap);
// Drops rows implied by the remaining ones; the cone itself is unchanged.
GlobalCone prune_redundant(const GlobalCone& gc);

struct BodyOptions {
  bool vertices = false;
  bool volume = false;
};

struct OkounkovBody {
  DivisorClass cls;
  geom::HPolyhedron body{0};
  std::optional<geom::VPolytope> verts;
  std::optional<Rational> vol;
};

OkounkovBody fiber_body(const GlobalCone& gc, const DivisorClass& cls, BodyOptions options = {});
Rational vol_of_class(const GlobalCone& gc, const DivisorClass& cls);
bool is_big(const GlobalCone& gc, const DivisorClass& cls);

struct OracleOutputs {
  std::vector<IntVector> valuations;
  Int h0 = 0;
};

OracleOutputs run_oracle(const FlagContext& ctx, const DivisorClass& cls);

struct CheckReport {
  bool containment = true;
  bool cardinality = true;
  bool level_c_applicable = false;
  bool level_c_equality = true;
  std::size_t valuation_count = 0;
  std::size_t lattice_count = 0;
  Int h0 = 0;
  std::vector<IntVector> outside_body;        // valuations not in the body
  std::vector<IntVector> unmatched_lattice;   // level-c lattice points with no valuation
  std::vector<IntVector> unmatched_valuation; // level-c valuations missing from the lattice scan

  bool passed() const { return containment && cardinality && (!level_c_applicable || level_c_equality); }
};

// Valuations inside the body, |valuations| = h0, and equality of the two
// point sets on c·Z^{n+1} whenever c divides the class.
CheckReport check_against_oracle(const GlobalCone& gc, const FlagContext& ctx, const DivisorClass& cls,
                                 const OracleOutputs& oracle);

// The bundle O(D_1) ⊕ O(D_2) with D_k = -Σ h_k(v_j) D_j; L_1 sits on the
// line (1,0) and L_2 on (0,1). h1, h2 are in input ray order.
Bundle2 split_bundle(const Fan& f, std::span<const Int> h1, std::span<const Int> h2);
// The toric polytope of P(L_1 ⊕ L_2) for the same flag.
geom::HPolyhedron split_model_body(const Fan& f, const FlagBasis& basis, std::span<const Int> h1,
                                   std::span<const Int> h2, const DivisorClass& cls);

enum class LogConcavity { Holds, Violated, Undecided };

// Decides vol_sum^{1/k} >= vol1^{1/k} + vol2^{1/k} by comparing k-th powers
// of integers; exact whenever the inequality is strict or vol2/vol1 is a
// rational k-th power.
LogConcavity compare_log_concave(const Rational& vol1, const Rational& vol2, const Rational& vol_sum, unsigned k);

}  // namespace okb
