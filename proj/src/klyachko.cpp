#include "okb/klyachko.hpp"

#include <algorithm>
#include <numeric>

#include "okb/errors.hpp"

namespace okb {

ProjLine::ProjLine(Int lambda, Int mu) {
  if (lambda == 0 && mu == 0) throw InvalidInput("a line needs a nonzero direction");
  Int g = std::gcd(lambda, mu);
  lambda /= g;
  mu /= g;
  if (lambda < 0 || (lambda == 0 && mu < 0)) {
    lambda = -lambda;
    mu = -mu;
  }
  lambda_ = lambda;
  mu_ = mu;
}

bool ProjLine::is_normalized(Int lambda, Int mu) {
  if (lambda == 0 && mu == 0) return false;
  ProjLine l(lambda, mu);
  return l.lambda() == lambda && l.mu() == mu;
}

std::string to_string(const ProjLine& l) {
  return "span(" + std::to_string(l.lambda()) + "," + std::to_string(l.mu()) + ")";
}

namespace {

std::vector<ProjLine> distinct_lines(const Bundle2& e, const std::vector<std::size_t>& rays) {
  std::vector<ProjLine> out;
  for (std::size_t j : rays) {
    const auto& jump = e.filtrations[j].jump;
    if (jump && std::find(out.begin(), out.end(), jump->line) == out.end()) out.push_back(jump->line);
  }
  return out;
}

}  // namespace

ValidationReport check_compatibility(const Fan& f, const Bundle2& e) {
  ValidationReport r;
  if (e.filtrations.size() != f.rays.size()) {
    r.issues.push_back({"structure", std::nullopt,
                        "bundle has " + std::to_string(e.filtrations.size()) + " filtrations for " +
                            std::to_string(f.rays.size()) + " rays"});
    return r;
  }
  for (std::size_t j = 0; j < e.filtrations.size(); ++j) {
    const auto& fl = e.filtrations[j];
    if (fl.jump && fl.jump->b <= fl.a)
      r.issues.push_back({"structure", std::nullopt, "ray " + std::to_string(j) + " has jump level b <= a"});
  }
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    auto lines = distinct_lines(e, f.max_cones[c]);
    if (lines.size() <= 2) continue;
    std::string detail = std::to_string(lines.size()) + " distinct jump lines:";
    for (const auto& l : lines) detail += " " + to_string(l);
    r.issues.push_back({"compatibility", c, detail});
  }
  return r;
}

int filtration_dim(const Bundle2& e, std::size_t ray, Int level) {
  const auto& fl = e.filtrations.at(ray);
  if (level <= fl.a) return 2;
  if (fl.jump && level <= fl.jump->b) return 1;
  return 0;
}

std::optional<ProjLine> filtration_line(const Bundle2& e, std::size_t ray, Int level) {
  if (filtration_dim(e, ray, level) != 1) return std::nullopt;
  return e.filtrations[ray].jump->line;
}

ConeSplitting cone_splitting(const Fan& f, const Bundle2& e, std::size_t cone) {
  const auto& rays = f.max_cones.at(cone);
  auto lines = distinct_lines(e, rays);
  if (lines.size() > 2) throw IncompatibleData("cone " + std::to_string(cone) + " has more than two jump lines");

  ConeSplitting s;
  if (lines.size() == 2) {
    s.lines = {lines[0], lines[1]};
  } else if (lines.size() == 1) {
    ProjLine complement = lines[0] == ProjLine(1, 0) ? ProjLine(0, 1) : ProjLine(1, 0);
    s.lines = {lines[0], complement};
  }

  std::vector<IntVector> m;
  for (std::size_t j : rays) m.push_back(f.rays[j]);
  auto inv = unimodular_inverse(m);
  for (int k = 0; k < 2; ++k) {
    IntVector u(f.dim, 0);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const auto& fl = e.filtrations[rays[i]];
      Int target = (fl.jump && fl.jump->line == s.lines[static_cast<std::size_t>(k)]) ? fl.jump->b : fl.a;
      for (std::size_t x = 0; x < f.dim; ++x) u[x] = checked_add(u[x], checked_mul(target, inv[x][i]));
    }
    s.characters[static_cast<std::size_t>(k)] = std::move(u);
  }
  return s;
}

RayKind FlagContext::kind(std::size_t j) const {
  if (!lines[j]) return RayKind::A;
  return *lines[j] == E1 ? RayKind::B : RayKind::C;
}

std::size_t FlagContext::family(std::size_t j) const {
  for (std::size_t h = 0; h < C.size(); ++h)
    if (std::find(C[h].begin(), C[h].end(), j) != C[h].end()) return h;
  throw std::out_of_range("ray is not in a C family");
}

IntVector FlagContext::to_standard(const IntVector& u) const {
  IntVector out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < n; ++x) out[x] = checked_add(out[x], checked_mul(u[i], basis.dual[i][x]));
  return out;
}

FlagContext derive_context(const Fan& f, const FlagBasis& b, const Bundle2& e, ContextOptions options) {
  auto report = check_compatibility(f, e);
  if (!report.ok()) throw IncompatibleData(report.issues.front().detail);

  FlagContext ctx;
  ctx.n = f.dim;
  ctx.d = f.rays.size();
  ctx.basis = b;
  for (std::size_t k = 0; k < ctx.d; ++k) {
    std::size_t j = b.ray_order[k];
    IntVector coords(ctx.n);
    for (std::size_t i = 0; i < ctx.n; ++i) coords[i] = dot(b.dual[i], f.rays[j]);
    ctx.rays.push_back(std::move(coords));
    const auto& fl = e.filtrations[j];
    ctx.a.push_back(fl.a);
    ctx.b.push_back(fl.b());
    ctx.lines.push_back(fl.jump ? std::optional<ProjLine>(fl.jump->line) : std::nullopt);
  }

  // On τ the characters are determined by their pairings with v_1..v_n.
  auto character = [&](const std::optional<ProjLine>& line) {
    IntVector u(ctx.n);
    for (std::size_t i = 0; i < ctx.n; ++i) u[i] = (line && ctx.lines[i] == line) ? ctx.b[i] : ctx.a[i];
    return u;
  };
  std::vector<ProjLine> tau_lines;
  for (std::size_t i = 0; i < ctx.n; ++i)
    if (ctx.lines[i] && std::find(tau_lines.begin(), tau_lines.end(), *ctx.lines[i]) == tau_lines.end())
      tau_lines.push_back(*ctx.lines[i]);

  if (tau_lines.empty()) {
    ctx.u1 = ctx.u2 = character(std::nullopt);
    ctx.E1 = options.degenerate_e1;
  } else if (tau_lines.size() == 1) {
    ctx.u1 = character(tau_lines[0]);
    ctx.u2 = character(std::nullopt);
    ctx.E1 = tau_lines[0];
  } else {
    IntVector uf = character(tau_lines[0]), ug = character(tau_lines[1]);
    if (uf > ug) {
      ctx.u1 = uf, ctx.u2 = ug, ctx.E1 = tau_lines[0];
    } else {
      ctx.u1 = ug, ctx.u2 = uf, ctx.E1 = tau_lines[1];
    }
  }

  for (std::size_t j = 0; j < ctx.d; ++j) {
    const auto& l = ctx.lines[j];
    if (l && *l != ctx.E1 && std::find(ctx.Ls.begin(), ctx.Ls.end(), *l) == ctx.Ls.end()) ctx.Ls.push_back(*l);
  }
  ctx.C.assign(ctx.Ls.size(), {});
  for (std::size_t j = 0; j < ctx.d; ++j) {
    const auto& l = ctx.lines[j];
    if (!l)
      ctx.A.push_back(j);
    else if (*l == ctx.E1)
      ctx.B.push_back(j);
    else
      ctx.C[static_cast<std::size_t>(std::find(ctx.Ls.begin(), ctx.Ls.end(), *l) - ctx.Ls.begin())].push_back(j);
    ctx.c = lcm_int(ctx.c, ctx.b[j] - ctx.a[j]);
  }
  return ctx;
}

Requirement sym_twist_requirement(const FlagContext& ctx, std::size_t j, Int m, Int m_j, Int pairing) {
  Int t = checked_add(checked_add(pairing, -checked_mul(ctx.a[j], m)), -m_j);
  if (ctx.kind(j) == RayKind::A) return {t <= 0, 0};
  Int r = std::max<Int>(0, ceil_div(t, ctx.b[j] - ctx.a[j]));
  return {r <= m, r};
}

}  // namespace okb
