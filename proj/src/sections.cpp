#include "okb/sections.hpp"

#include <algorithm>
#include <functional>

#include "okb/errors.hpp"

namespace okb {

IntVector full_coefficients(const FlagContext& ctx, const DivisorClass& cls) {
  if (cls.coeffs.size() != ctx.d - ctx.n)
    throw DimensionMismatch("class has " + std::to_string(cls.coeffs.size()) + " coefficients, expected " +
                            std::to_string(ctx.d - ctx.n));
  IntVector m(ctx.n, 0);
  m.insert(m.end(), cls.coeffs.begin(), cls.coeffs.end());
  return m;
}

// Characters with ⟨u, v_j⟩ <= b_j·m + m_j on every ray; the A-rays' sharper
// cut a_j·m + m_j is left to isotypical_dim.
std::vector<IntVector> isotypical_support(const FlagContext& ctx, const DivisorClass& cls) {
  if (cls.twist < 0) return {};
  const IntVector m = full_coefficients(ctx, cls);
  IntVector bound(ctx.d);
  std::vector<geom::LinearInequality> ineqs;
  for (std::size_t j = 0; j < ctx.d; ++j) {
    bound[j] = checked_add(checked_mul(ctx.b[j], cls.twist), m[j]);
    RatVector normal = RatVector::from_ints(ctx.rays[j]);
    normal *= -1;
    ineqs.emplace_back(std::move(normal), Rational(static_cast<long>(bound[j])));
  }
  auto box = geom::bounding_box(geom::HPolyhedron(ctx.n, std::move(ineqs)));
  if (!box.feasible) return {};
  if (!box.bounded()) throw UnboundedSupport("rays do not positively span the lattice");

  IntVector lo(ctx.n), hi(ctx.n);
  for (std::size_t i = 0; i < ctx.n; ++i) {
    Integer l, h;
    const Rational& ql = *box.ranges[i].lower;
    const Rational& qh = *box.ranges[i].upper;
    mpz_cdiv_q(l.get_mpz_t(), ql.get_num_mpz_t(), ql.get_den_mpz_t());
    mpz_fdiv_q(h.get_mpz_t(), qh.get_num_mpz_t(), qh.get_den_mpz_t());
    lo[i] = to_int(l);
    hi[i] = to_int(h);
  }

  std::vector<IntVector> out;
  IntVector u(ctx.n);
  std::function<void(std::size_t)> scan = [&](std::size_t i) {
    if (i == ctx.n) {
      for (std::size_t j = 0; j < ctx.d; ++j)
        if (ctx.pairing(u, j) > bound[j]) return;
      out.push_back(u);
      return;
    }
    for (Int t = lo[i]; t <= hi[i]; ++t) {
      u[i] = t;
      scan(i + 1);
    }
  };
  scan(0);
  return out;
}

IsotypicalSummand isotypical_dim(const FlagContext& ctx, const DivisorClass& cls, const IntVector& u) {
  const IntVector m = full_coefficients(ctx, cls);
  IsotypicalSummand s;
  s.u = u;
  s.alphas.assign(ctx.C.size(), 0);
  bool pass = cls.twist >= 0;
  for (std::size_t j = 0; j < ctx.d && pass; ++j) {
    Requirement r = sym_twist_requirement(ctx, j, cls.twist, m[j], ctx.pairing(u, j));
    pass = r.pass;
    switch (ctx.kind(j)) {
      case RayKind::A:
        break;
      case RayKind::B:
        s.alpha0 = std::max(s.alpha0, r.multiplicity);
        break;
      case RayKind::C: {
        Int& alpha = s.alphas[ctx.family(j)];
        alpha = std::max(alpha, r.multiplicity);
        break;
      }
    }
  }
  if (!pass) return s;
  Int total = s.alpha0;
  for (Int a : s.alphas) total = checked_add(total, a);
  s.dim = std::max<Int>(0, checked_add(cls.twist + 1, -total));
  return s;
}

std::vector<IsotypicalSummand> isotypical_decomposition(const FlagContext& ctx, const DivisorClass& cls) {
  std::vector<IsotypicalSummand> out;
  for (const auto& u : isotypical_support(ctx, cls)) {
    auto s = isotypical_dim(ctx, cls, u);
    if (s.dim > 0) out.push_back(std::move(s));
  }
  return out;
}

Int h0(const FlagContext& ctx, const DivisorClass& cls) {
  Int total = 0;
  for (const auto& s : isotypical_decomposition(ctx, cls)) total = checked_add(total, s.dim);
  return total;
}

std::vector<ValuationVector> valuation_set(const FlagContext& ctx, const DivisorClass& cls) {
  std::vector<ValuationVector> out;
  const Int m = cls.twist;
  for (const auto& s : isotypical_decomposition(ctx, cls)) {
    for (Int t = 0; t < s.dim; ++t) {
      const Int last = s.alpha0 + t;
      ValuationVector x(ctx.n + 1);
      for (std::size_t i = 0; i < ctx.n; ++i)
        x[i] = checked_add(checked_add(checked_mul(last, ctx.u1[i]), checked_mul(m - last, ctx.u2[i])), -s.u[i]);
      x[ctx.n] = last;
      out.push_back(std::move(x));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace okb
