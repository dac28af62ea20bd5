#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "okb/fan.hpp"

namespace okb {

// A line k·(λ, μ) in the fiber E = k², stored primitive with its first
// nonzero entry positive.
class ProjLine {
 public:
  ProjLine(Int lambda, Int mu);
  Int lambda() const { return lambda_; }
  Int mu() const { return mu_; }
  // True when (lambda, mu) was already primitive and sign-normalized.
  static bool is_normalized(Int lambda, Int mu);

  friend bool operator==(const ProjLine&, const ProjLine&) = default;
  friend auto operator<=>(const ProjLine&, const ProjLine&) = default;

 private:
  Int lambda_;
  Int mu_;
};

std::string to_string(const ProjLine& l);

struct Jump {
  Int b;
  ProjLine line;
};

// ℰ(i) = E for i <= a; = line for a < i <= b; = 0 beyond.
struct RayFiltration {
  Int a = 0;
  std::optional<Jump> jump;

  Int b() const { return jump ? jump->b : a + 1; }
};

struct Bundle2 {
  std::vector<RayFiltration> filtrations;
};

ValidationReport check_compatibility(const Fan& f, const Bundle2& e);

int filtration_dim(const Bundle2& e, std::size_t ray, Int level);
std::optional<ProjLine> filtration_line(const Bundle2& e, std::size_t ray, Int level);

// Two characters (standard coordinates) and lines with E = W1 ⊕ W2 and
// ℰ(i) = ⊕_{⟨u_k, v_j⟩ >= i} W_k on every ray of the cone.
struct ConeSplitting {
  std::array<IntVector, 2> characters;
  std::array<ProjLine, 2> lines{ProjLine(1, 0), ProjLine(0, 1)};
};

ConeSplitting cone_splitting(const Fan& f, const Bundle2& e, std::size_t cone);

enum class RayKind { A, B, C };

// Everything downstream of the flag choice. Per-ray data is indexed by flag
// position (0..d-1, τ's rays first). Characters are in dual-basis
// coordinates, i.e. the tuple of pairings with v_1, ..., v_n.
struct FlagContext {
  std::size_t n = 0;
  std::size_t d = 0;
  FlagBasis basis;
  std::vector<IntVector> rays;  // rays[j][i] = ⟨v_i*, v_j⟩
  IntVector a;
  IntVector b;
  std::vector<std::optional<ProjLine>> lines;
  IntVector u1;
  IntVector u2;
  ProjLine E1{1, 0};
  std::vector<ProjLine> Ls;
  std::vector<std::size_t> A;
  std::vector<std::size_t> B;
  std::vector<std::vector<std::size_t>> C;
  Int c = 1;

  Int pairing(const IntVector& u, std::size_t j) const { return dot(u, rays[j]); }
  RayKind kind(std::size_t j) const;
  // Index h of the family C_h containing ray j.
  std::size_t family(std::size_t j) const;
  // Converts a dual-basis character to standard coordinates.
  IntVector to_standard(const IntVector& u) const;
};

struct ContextOptions {
  // E1 when no ray of τ jumps; any line is a valid choice.
  ProjLine degenerate_e1{1, 0};
};

FlagContext derive_context(const Fan& f, const FlagBasis& b, const Bundle2& e, ContextOptions options = {});

struct Requirement {
  bool pass = true;
  Int multiplicity = 0;  // forced multiplicity of the ray's line; 0 for A-rays
};

// Filtration of (Sym^m ℰ) ⊗ O(D) on ray j at the character with pairing ⟨u, v_j⟩.
Requirement sym_twist_requirement(const FlagContext& ctx, std::size_t j, Int m, Int m_j, Int pairing);

}  // namespace okb
