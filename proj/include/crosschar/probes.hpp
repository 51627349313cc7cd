#pragma once

// Finite-level checks of the module computations: group identities, the
// Lambda-calculus in Ind_N k_-, the e_+/e_- splitting, the maps phi_e and
// phi_s, the torus operator on V, and the spinning probes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crosschar/chars.hpp"
#include "crosschar/jordan.hpp"
#include "crosschar/meataxe.hpp"
#include "crosschar/module.hpp"
#include "crosschar/report.hpp"
#include "crosschar/rng.hpp"
#include "crosschar/spin.hpp"

namespace crosschar {

// ---------------------------------------------------------------- helpers

/// The trivial character of `level` with values in GF(r).
inline Character trivial_character(const Field& level, std::uint64_t r) {
  return make_character(level, make_coeff_field(r, 1), 0);
}

/// Uniform element of SL2(F_Q) via its Bruhat form.
inline GroupElement random_group_element(const Field& f, Rng& rng) {
  const std::uint64_t q = f->order(), u = f->units();
  const std::uint64_t idx = rng.below(q * u + q * q * u);
  if (idx < q * u) return assemble(f, BorelForm{static_cast<std::uint32_t>(idx / u), f->exp(idx % u)});
  const std::uint64_t j = idx - q * u;
  return assemble(f, BigCellForm{static_cast<std::uint32_t>(j / (u * q)), f->exp((j / q) % u),
                                 static_cast<std::uint32_t>(j % q)});
}

inline Vec random_dense(const FieldSpec& f, std::size_t n, Rng& rng) {
  Vec v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng.below(f.order()));
  return v;
}

/// g . (basis vector 0).
inline ModuleVector translate_of_one(const ModulePtr& m, const GroupElement& g) {
  return act(g, ModuleVector::basis(m, 0));
}

inline std::string fmt(const Field& f, std::uint32_t code) { return f->format(code); }

/// Members of the l-th roots of unity in f, ascending by code.
inline std::vector<std::uint32_t> roots_of_unity(const FieldSpec& f, std::uint64_t l) {
  require(f.units() % l == 0, "roots_of_unity: field lacks the requested roots");
  std::vector<std::uint32_t> out;
  for (std::uint64_t k = 0; k < l; ++k) out.push_back(f.exp(k * (f.units() / l)));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- group identities

/// h(c) eps(x) h(c)^{-1} = eps(c^2 x) and s eps(x) s = eps(-1/x) s h(-x) eps(-1/x), all x, c != 0.
inline ProbeReport group_identities(std::uint64_t q) {
  const Field f = field_of_order(q);
  ProbeReport rep{"group-identities", q, 0, std::nullopt, 0, {}, json::array()};
  std::uint64_t conj_ok = 0, conj_n = 0, sws_ok = 0, sws_n = 0;
  const GroupElement s = mk_s(f);
  for (std::uint32_t x = 1; x < f->order(); ++x) {
    for (std::uint32_t c = 1; c < f->order(); ++c) {
      ++conj_n;
      const GroupElement h = mk_h(f, c);
      conj_ok += h * mk_eps(f, x) * invert(h) == mk_eps(f, f->mul(f->mul(c, c), x));
    }
    const std::uint32_t mi = f->neg(f->inv(x));
    ++sws_n;
    sws_ok += s * mk_eps(f, x) * s == mk_eps(f, mi) * s * mk_h(f, f->neg(x)) * mk_eps(f, mi);
  }
  rep.expect("torus_conjugation", conj_n, conj_ok);
  rep.expect("s_eps_s", sws_n, sws_ok);
  return rep;
}

// ---------------------------------------------------------------- Lambda calculus

/// Lambda(z) = (s eps(z) + 1 - eps(-1/z)) 1_- in Ind_N k_-; z a nonzero level code.
inline ModuleVector lambda_vec(const ModulePtr& m, std::uint32_t z) {
  require(m->subgroup() == Subgroup::N && m->sign() == -1, "lambda_vec: module must be Ind_N k_-");
  const Field& f = m->level();
  require(z != 0 && z < f->order(), "lambda_vec: z must be a nonzero element");
  const ModuleVector one = ModuleVector::basis(m, 0);
  return translate_of_one(m, mk_s(f) * mk_eps(f, z)) + one - translate_of_one(m, mk_eps(f, f->neg(f->inv(z))));
}

inline ProbeReport lambda_identities(std::uint64_t q, std::uint64_t r) {
  const Field f = field_of_order(q);
  require(r != 2, "lambda_identities: r = 2 (the N-decomposition needs char != 2)");
  require(r != f->p(), "lambda_identities: r must differ from p");
  const ModulePtr m = InducedModule::induce_normalizer(f, -1, make_coeff_field(r, 1));
  ProbeReport rep{"lambda-identities", q, r, std::nullopt, 0, {}, json::array()};
  const FieldSpec& F = *f;
  const std::uint32_t Q = F.order();
  std::vector<ModuleVector> lam(Q);
  for (std::uint32_t z = 1; z < Q; ++z) lam[z] = lambda_vec(m, z);
  const GroupElement s = mk_s(f);
  std::uint64_t n1 = 0, ok1 = 0, n2 = 0, ok2 = 0, n3 = 0, ok3 = 0, n4 = 0, ok4 = 0;
  for (std::uint32_t z = 1; z < Q; ++z) {
    const std::uint32_t mzi = F.neg(F.inv(z));
    ++n1;
    ok1 += act(mk_eps(f, z), lam[F.inv(z)]) == -lam[mzi];
    ++n2;
    ok2 += act(s, lam[z]) == -lam[mzi];
    for (std::uint32_t c = 1; c < Q; ++c) {
      ++n4;
      ok4 += act(mk_h(f, c), lam[z]) == lam[F.mul(F.inv(F.mul(c, c)), z)];
    }
  }
  for (std::uint32_t x = 1; x < Q; ++x) {
    for (std::uint32_t y = 1; y < Q; ++y) {
      const std::uint32_t xy1 = F.sub(F.mul(x, y), 1);
      if (xy1 == 0) continue;
      ++n3;
      const ModuleVector lhs = act(s * mk_eps(f, x), lam[y]);
      const ModuleVector rhs = act(mk_eps(f, F.neg(F.inv(x))), lam[F.mul(x, xy1)]) + lam[x] -
                               lam[F.mul(F.inv(y), xy1)];
      ok3 += lhs == rhs;
    }
  }
  rep.expect("eps(z)Lambda(1/z) = -Lambda(-1/z)", n1, ok1);
  rep.expect("s Lambda(z) = -Lambda(-1/z)", n2, ok2);
  rep.expect("s eps(x) Lambda(y) three-term", n3, ok3);
  rep.expect("h(c) Lambda(z) = Lambda(z/c^2)", n4, ok4);
  return rep;
}

// ---------------------------------------------------------------- e_+/e_- splitting

/// Matrix of right multiplication by s on Ind_T theta (a module endomorphism when theta^s = theta).
inline Matrix right_s_matrix(const ModulePtr& t) {
  require(t->subgroup() == Subgroup::T, "right_s_matrix: Ind_T only");
  Matrix out(t->coeff_field(), t->dim(), t->dim());
  const GroupElement s = mk_s(t->level());
  for (std::uint32_t j = 0; j < t->dim(); ++j) {
    const auto im = t->locate(t->representative(j) * s);
    out.at(im.index, j) = im.coeff;
  }
  return out;
}

inline ProbeReport decomposition_check(std::uint64_t q, std::uint64_t r) {
  require(r != 2, "decomposition_check: r = 2 is excluded");
  const Field f = field_of_order(q);
  require(r != f->p(), "decomposition_check: r must differ from p");
  const ModulePtr t = InducedModule::induce_torus(trivial_character(f, r));
  const Field& k = t->coeff_field();
  const std::size_t n = t->dim(), half_dim = n / 2;
  ProbeReport rep{"decompose", q, r, std::nullopt, 0, {}, json::array()};
  const Matrix I = Matrix::identity(k, n);
  const Matrix S = right_s_matrix(t);
  const std::uint32_t half = k->inv(k->from_int(2));
  const Matrix ep = (I + S).scaled(half), em = (I - S).scaled(half);
  const Matrix zero(k, n, n);
  rep.check("e+ + e- = 1", ep + em == I);
  rep.check("e+ idempotent", ep * ep == ep);
  rep.check("e- idempotent", em * em == em);
  rep.check("e+ e- = 0", ep * em == zero);
  const Rep gens = t->rep();
  bool commute = true;
  for (const auto& g : gens.dense()) commute = commute && g * ep == ep * g && g * em == em * g;
  rep.check("e+- commute with G", commute);
  EchelonBasis plus(k, n), minus(k, n), both(k, n);
  for (std::size_t j = 0; j < n; ++j) {
    plus.add(ep.col(j));
    minus.add(em.col(j));
    both.add(ep.col(j));
    both.add(em.col(j));
  }
  rep.expect("dim image e+", half_dim, plus.size());
  rep.expect("dim image e-", half_dim, minus.size());
  rep.check("image e+ G-stable", is_stable(gens, plus));
  rep.check("image e- G-stable", is_stable(gens, minus));
  rep.expect("dim(image e+ + image e-)", n, both.size());
  // Ind_N k_+- -> image of e_+-, 1_+- -> e_+- 1_tr
  for (int sign : {1, -1}) {
    const ModulePtr nm = InducedModule::induce_normalizer(f, sign, t->coeff());
    const Matrix& e = sign == 1 ? ep : em;
    Matrix phi(k, n, nm->dim());
    for (std::uint32_t j = 0; j < nm->dim(); ++j) {
      const auto im = t->locate(nm->representative(j));
      const Vec c = e.col(im.index);
      for (std::size_t i = 0; i < n; ++i) phi.at(i, j) = k->mul(c[i], im.coeff);
    }
    const Rep ngens = nm->rep();
    bool equiv = true;
    const auto tg = gens.dense(), ng = ngens.dense();
    for (std::size_t g = 0; g < tg.size(); ++g) equiv = equiv && tg[g] * phi == phi * ng[g];
    const std::string tag = sign == 1 ? "+" : "-";
    rep.check("Ind_N k" + tag + " -> image e" + tag + " equivariant", equiv);
    rep.expect("Ind_N k" + tag + " -> image e" + tag + " rank", nm->dim(), rank(phi));
  }
  return rep;
}

// ---------------------------------------------------------------- phi_e, phi_s

/// Matrix of the module map Ind_T theta -> target sending 1_theta to w (columns: rep_j . w).
inline Matrix induced_map(const ModulePtr& from, const ModuleVector& w) {
  const ModulePtr& to = w.owner();
  Matrix out(to->coeff_field(), to->dim(), from->dim());
  for (std::uint32_t j = 0; j < from->dim(); ++j) {
    const ModuleVector image = act(from->representative(j), w);
    for (const auto& [i, c] : image.terms()) out.at(i, j) = c;
  }
  return out;
}

struct PhiMaps {
  ModulePtr torus, borel, borel_s;
  Matrix phi_e, phi_s;
};

inline PhiMaps phi_maps(const Character& theta) {
  PhiMaps pm;
  pm.torus = InducedModule::induce_torus(theta);
  pm.borel = InducedModule::induce_borel(theta);
  pm.borel_s = InducedModule::induce_borel(theta.inverse());
  pm.phi_e = induced_map(pm.torus, ModuleVector::basis(pm.borel, 0));
  pm.phi_s = induced_map(pm.torus, translate_of_one(pm.borel_s, mk_s(theta.domain)));
  return pm;
}

inline ProbeReport phi_check(std::uint64_t q, std::uint64_t r, std::uint64_t a, std::uint64_t seed,
                             std::size_t trials = 500) {
  const Field f = field_of_order(q);
  const Character theta = make_character(f, coeff_field_for(f, r), a);
  const Character theta_s = theta.inverse();
  const PhiMaps pm = phi_maps(theta);
  const Field& k = theta.target.field;
  const FieldSpec& F = *f;
  const std::uint32_t Q = F.order();
  ProbeReport rep{"phi", q, r, theta.a, seed, {}, json::array()};
  rep.check("phi_e(1_theta) = 1^_theta", pm.phi_e.col(0) == ModuleVector::basis(pm.borel, 0).dense());
  rep.check("phi_s(1_theta) = s 1^_theta^s", pm.phi_s.col(0) == translate_of_one(pm.borel_s, mk_s(f)).dense());
  // closed form of phi_s on single terms
  std::uint64_t n_cf = 0, ok_cf = 0;
  for (std::uint32_t x = 0; x < Q; ++x) {
    for (std::uint32_t y = 0; y < Q; ++y) {
      ++n_cf;
      const std::uint32_t col = pm.torus->big_cell_index(x, y);
      ModuleVector expect(pm.borel_s);
      if (y == 0)
        expect = ModuleVector::basis(pm.borel_s, 0, theta_s.eval_code(F.neg(1)));
      else
        expect = ModuleVector::basis(pm.borel_s, 1 + F.sub(x, F.inv(y)), theta_s.eval_code(F.neg(y)));
      ok_cf += pm.phi_s.col(col) == expect.dense();
    }
  }
  rep.expect("phi_s(eps(x) s eps(y) 1) closed form", n_cf, ok_cf);
  // equivariance on random (g, v)
  Rng rng(seed, {0x706869ULL, q, r, a});
  std::uint64_t ok_e = 0, ok_s = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const GroupElement g = random_group_element(f, rng);
    const Vec v = random_dense(*k, pm.torus->dim(), rng);
    const ModuleVector mv = ModuleVector::from_dense(pm.torus, v);
    const Vec gv = act(g, mv).dense();
    ok_e += pm.phi_e.apply(gv) == act(g, ModuleVector::from_dense(pm.borel, pm.phi_e.apply(v))).dense();
    ok_s += pm.phi_s.apply(gv) == act(g, ModuleVector::from_dense(pm.borel_s, pm.phi_s.apply(v))).dense();
  }
  rep.expect("phi_e equivariant", trials, ok_e);
  rep.expect("phi_s equivariant", trials, ok_s);
  rep.expect("rank phi_e", Q + 1, rank(pm.phi_e));
  rep.expect("rank phi_s", Q + 1, rank(pm.phi_s));
  return rep;
}

// ---------------------------------------------------------------- the torus operator on V

/// Ind_T theta at level q^2 together with the level-q data used by the probes.
struct LiftedTorus {
  Field fq, level;
  std::shared_ptr<const Embedding> emb;
  Character theta;  // at the level
  ModulePtr module;

  std::uint32_t up(std::uint32_t z) const { return (*emb)(z); }
  /// eps(x) s eps(y) 1 for level-q codes x, y.
  std::uint32_t big(std::uint32_t x, std::uint32_t y) const { return module->big_cell_index(up(x), up(y)); }
  /// sum_{x in F_q} eps(x) . v
  ModuleVector ubar_apply(const ModuleVector& v) const { return act(ubar(module, fq), v); }
  /// U s eps(z) 1
  ModuleVector u_s_eps(std::uint32_t z) const {
    ModuleVector v(module);
    for (std::uint32_t x = 0; x < fq->order(); ++x) v.add_term(big(x, z), 1);
    return v;
  }
  ModuleVector u_one() const {
    ModuleVector v(module);
    for (std::uint32_t x = 0; x < fq->order(); ++x) v.add_term(up(x), 1);
    return v;
  }
};

/// theta_exp absent: trivial character with roots of unity for the level; otherwise the character
/// of F_q^* with that exponent, extended to level q^2.
inline LiftedTorus lifted_torus(std::uint64_t q, std::uint64_t r, std::optional<std::uint64_t> theta_exp,
                                bool minimal_coefficients = false) {
  LiftedTorus lt;
  lt.fq = field_of_order(q);
  require(r != lt.fq->p(), "r must differ from p");
  lt.level = quadratic_extension(lt.fq);
  lt.emb = std::make_shared<const Embedding>(lt.fq, lt.level);
  if (theta_exp) {
    const Character base = make_character(lt.fq, coeff_field_for(lt.fq, r), *theta_exp);
    lt.theta = extend_character(base, lt.level->degree());
  } else {
    lt.theta = minimal_coefficients ? trivial_character(lt.level, r)
                                    : make_character(lt.level, coeff_field_for(lt.level, r), 0);
  }
  lt.module = InducedModule::induce_torus(lt.theta);
  return lt;
}

struct VOperator {
  Matrix A;
  bool stable = true;
  std::uint32_t kappa = 1;
  std::uint32_t c = 1;  // the square root of omega used for h
};

/// The action of h(sqrt(omega)) on V = span{U 1, U s eps(z) 1 : z in F_q}, basis ordered U1, then z by code.
inline VOperator torus_operator_on_V(const LiftedTorus& lt) {
  const FieldSpec& Fq = *lt.fq;
  const Field& k = lt.theta.target.field;
  const std::size_t d = Fq.order() + 1;
  VOperator op{Matrix(k, d, d)};
  const FieldElement root = sqrt_ext(FieldElement::generator(lt.fq));
  op.c = Embedding(root.owner(), lt.level)(root.code());
  // kappa = theta^s(omega^{-1/2})
  op.kappa = lt.theta.inverse().eval_code(lt.level->inv(op.c));
  const GroupElement h = mk_h(lt.level, op.c);
  std::vector<ModuleVector> basis{lt.u_one()};
  for (std::uint32_t z = 0; z < Fq.order(); ++z) basis.push_back(lt.u_s_eps(z));
  for (std::size_t j = 0; j < d; ++j) {
    const ModuleVector w = act(h, basis[j]);
    ModuleVector recon(lt.module);
    for (std::size_t i = 0; i < d; ++i) {
      const std::uint32_t lead = i == 0 ? 0 : lt.big(0, static_cast<std::uint32_t>(i - 1));
      const std::uint32_t coeff = w.get(lead);
      op.A.at(i, j) = coeff;
      recon = recon + basis[i].scaled(coeff);
    }
    op.stable = op.stable && recon == w;
  }
  return op;
}

inline json blocks_json(const Field& k, std::vector<std::pair<std::uint32_t, std::size_t>> blocks) {
  std::sort(blocks.begin(), blocks.end());
  json out = json::array();
  for (const auto& [e, s] : blocks) out.push_back(json::array({fmt(k, e), s}));
  return out;
}

inline ProbeReport jordan_on_V(std::uint64_t q, std::uint64_t r, std::optional<std::uint64_t> theta_exp) {
  const LiftedTorus lt = lifted_torus(q, r, theta_exp);
  const Field& k = lt.theta.target.field;
  const FieldSpec& K = *k;
  const VOperator op = torus_operator_on_V(lt);
  const JordanReport jr = jordan_form(op.A);
  ProbeReport rep{"jordan", q, r, theta_exp, 0, {}, json::array()};
  const auto [m, l] = rpart_decompose(q - 1, r);
  const std::uint32_t kappa = op.kappa, kappa_inv = K.inv(op.kappa);

  std::vector<std::pair<std::uint32_t, std::size_t>> predicted{{kappa, 1}, {kappa_inv, 1}};
  for (auto lambda : roots_of_unity(K, l)) predicted.emplace_back(K.mul(kappa, lambda), m);
  std::vector<std::pair<std::uint32_t, std::size_t>> got;
  for (const auto& b : jr.blocks)
    for (std::size_t i = 0; i < b.multiplicity; ++i) got.emplace_back(b.eigenvalue, b.size);

  FPoly predicted_min(q - 1, 0);
  predicted_min[0] = K.neg(K.pow(kappa, static_cast<std::int64_t>(q - 1)));
  predicted_min.push_back(1);
  trim(predicted_min);

  rep.check("V stable under h(omega^(1/2))", op.stable);
  rep.check("A P = P J", jr.verified);
  rep.expect("minimal polynomial", format_poly(K, predicted_min), format_poly(K, jr.minpoly));
  rep.expect("block multiset", blocks_json(k, predicted), blocks_json(k, got));
  if ((q - 1) % r != 0) rep.check("diagonalizable (r does not divide q-1)", jr.diagonalizable());
  if (theta_exp) {
    const bool has_k = std::count(got.begin(), got.end(), std::make_pair(kappa, std::size_t{1})) > 0;
    const bool has_ki = std::count(got.begin(), got.end(), std::make_pair(kappa_inv, std::size_t{1})) > 0;
    rep.check("J_1(kappa) present", has_k);
    rep.check("J_1(kappa^-1) present", has_ki);
    const Character base = make_character(lt.fq, coeff_field_for(lt.fq, r), *theta_exp);
    // kappa^2 = theta(omega), so kappa = kappa^-1 only for trivial theta
    if (!base.is_trivial()) rep.check("kappa != kappa^-1", kappa != kappa_inv);
    rep.observe("theta_order_on_F_q", base.order());
    rep.observe("theta_exponent_at_level", lt.theta.a);
  }
  rep.observe("level", lt.level->order());
  rep.observe("coefficient_field", K.order());
  rep.observe("kappa", fmt(k, kappa));
  rep.observe("m", m);
  rep.observe("l", l);
  rep.observe("charpoly", format_poly(K, jr.charpoly_coeffs));
  json sizes = json::array();
  for (auto s : jr.block_sizes()) sizes.push_back(s);
  rep.observe("block_sizes", sizes);
  return rep;
}

// ---------------------------------------------------------------- spinning probes

/// sum_z a_z U s eps(z) 1 over z in F_q^* (a indexed by the F_q code; a[0] unused).
inline ModuleVector u_s_combination(const LiftedTorus& lt, const std::vector<std::uint32_t>& a) {
  require(a.size() == lt.fq->order(), "coefficient vector must have one entry per element of F_q");
  ModuleVector v(lt.module);
  for (std::uint32_t z = 1; z < lt.fq->order(); ++z)
    if (a[z] != 0) v = v + lt.u_s_eps(z).scaled(a[z]);
  return v;
}

struct Lemma21Outcome {
  bool dbar_ok = false, shape_ok = false, step_i = false, step_ii = false;
  std::size_t spin_dim = 0;
};

/// One instance: xi = sum a_z U s eps(z) 1_tr in Ind_T tr at level q^2.
inline Lemma21Outcome lemma21_instance(const LiftedTorus& lt, const Rep& rep, const std::vector<std::uint32_t>& a) {
  const FieldSpec& K = *lt.theta.target.field;
  std::uint32_t A = 0;
  for (std::uint32_t z = 1; z < a.size(); ++z) A = K.add(A, a[z]);
  require(A != 0, "lemma21: the coefficient sum A must be nonzero");
  Lemma21Outcome out;
  const ModulePtr& m = lt.module;
  const ModuleVector xi = u_s_combination(lt, a);
  // Dbar xi = A U s U^* 1
  ModuleVector u_star(m);
  for (std::uint32_t z = 1; z < lt.fq->order(); ++z) u_star = u_star + lt.u_s_eps(z);
  out.dbar_ok = act(dbar(m, lt.fq), xi) == u_star.scaled(A);
  // shape of U s xi: = A (U1 + Us1) + sum_{z != 0} b_z U s eps(z) 1
  const ModuleVector usxi = lt.ubar_apply(act(mk_s(lt.level), xi));
  ModuleVector rest = usxi - (lt.u_one() + lt.u_s_eps(0)).scaled(A);
  bool shape = rest.get(0) == 0 && rest.get(lt.big(0, 0)) == 0;
  for (std::uint32_t z = 1; z < lt.fq->order() && shape; ++z) rest = rest - lt.u_s_eps(z).scaled(rest.get(lt.big(0, z)));
  out.shape_ok = shape && rest.is_zero();
  const SpinResult sp = spin(rep, {xi.dense()});
  out.spin_dim = sp.dim();
  out.step_i = sp.complete && sp.contains((lt.u_one() + lt.u_s_eps(0)).dense());
  ModuleVector e_plus_s = ModuleVector::basis(m, 0);
  e_plus_s.add_term(lt.big(0, 0), 1);
  out.step_ii = sp.contains(e_plus_s.dense());
  return out;
}

inline ProbeReport lemma21_probe(std::uint64_t q, std::uint64_t r, std::uint64_t seed, std::size_t trials) {
  const LiftedTorus lt = lifted_torus(q, r, std::nullopt, true);
  const Rep rep = lt.module->rep();
  const FieldSpec& K = *lt.theta.target.field;
  Rng rng(seed, {0x6c32ULL, q, r});
  ProbeReport pr{"lemma21", q, r, std::nullopt, seed, {}, json::array()};
  std::size_t dbar_ok = 0, shape_ok = 0, step_i = 0, step_ii = 0;
  json dims = json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::uint32_t> a(lt.fq->order(), 0);
    std::uint32_t A = 0;
    do {
      A = 0;
      for (std::uint32_t z = 1; z < a.size(); ++z) A = K.add(A, a[z] = static_cast<std::uint32_t>(rng.below(K.order())));
    } while (A == 0);
    const auto o = lemma21_instance(lt, rep, a);
    dbar_ok += o.dbar_ok;
    shape_ok += o.shape_ok;
    step_i += o.step_i;
    step_ii += o.step_ii;
    dims.push_back(o.spin_dim);
  }
  pr.expect("Dbar xi = A U s U* 1", trials, dbar_ok);
  pr.expect("U s xi = A(U1 + Us1) + sum b_z U s eps(z) 1", trials, shape_ok);
  pr.expect("(i) U1 + Us1 in kG xi", trials, step_i);
  pr.observe("(ii) (e+s)1_tr in kG xi: passes", step_ii);
  pr.observe("(ii) pass rate", json::array({step_ii, trials}));
  pr.observe("level", lt.level->order());
  pr.observe("module_dim", lt.module->dim());
  pr.observe("spin_dims", dims);
  return pr;
}

struct Lemma41Outcome {
  std::uint32_t C = 0, D = 0, coeff_u1 = 0, coeff_us1 = 0;
  bool coeffs_ok = false, in_V = false, member = false, full = false;
  std::size_t spin_dim = 0;
};

inline Lemma41Outcome lemma41_instance(const LiftedTorus& lt, const Rep& rep, const std::vector<std::uint32_t>& c) {
  const FieldSpec& K = *lt.theta.target.field;
  const FieldSpec& Fq = *lt.fq;
  const Character theta_s = lt.theta.inverse();
  Lemma41Outcome out;
  for (std::uint32_t z = 1; z < c.size(); ++z) {
    out.C = K.add(out.C, c[z]);
    out.D = K.add(out.D, K.mul(c[z], theta_s.eval_code(lt.up(Fq.neg(z)))));
  }
  require(out.C != 0, "lemma41: sum c_z must be nonzero");
  require(out.D != 0, "lemma41: sum c_z theta^s(-z) must be nonzero");
  const ModuleVector zeta = u_s_combination(lt, c);
  const ModuleVector uszeta = lt.ubar_apply(act(mk_s(lt.level), zeta));
  out.coeff_u1 = uszeta.get(0);
  out.coeff_us1 = uszeta.get(lt.big(0, 0));
  const std::uint32_t theta_m1 = lt.theta.eval_code(lt.level->neg(1));
  out.coeffs_ok = out.coeff_u1 == K.mul(theta_m1, out.C) && out.coeff_us1 == out.D;
  ModuleVector rest = uszeta - lt.u_one().scaled(out.coeff_u1);
  for (std::uint32_t z = 0; z < Fq.order(); ++z) rest = rest - lt.u_s_eps(z).scaled(rest.get(lt.big(0, z)));
  out.in_V = rest.is_zero();
  const SpinResult sp = spin(rep, {zeta.dense()});
  out.spin_dim = sp.dim();
  out.member = sp.complete && (sp.contains(lt.u_one().dense()) || sp.contains(lt.u_s_eps(0).dense()));
  out.full = sp.dim() == lt.module->dim();
  return out;
}

inline ProbeReport lemma41_probe(std::uint64_t q, std::uint64_t r, std::uint64_t theta_exp, std::uint64_t seed,
                                 std::size_t trials) {
  const LiftedTorus lt = lifted_torus(q, r, theta_exp);
  require(!lt.theta.is_trivial(), "lemma41: theta must be nontrivial");
  const Rep rep = lt.module->rep();
  const FieldSpec& K = *lt.theta.target.field;
  const Character theta_s = lt.theta.inverse();
  Rng rng(seed, {0x6c34ULL, q, r, theta_exp});
  ProbeReport pr{"lemma41", q, r, theta_exp, seed, {}, json::array()};
  std::size_t coeffs_ok = 0, in_v = 0, member = 0, full = 0;
  json dims = json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<std::uint32_t> c(lt.fq->order(), 0);
    while (true) {
      std::uint32_t C = 0, D = 0;
      for (std::uint32_t z = 1; z < c.size(); ++z) {
        c[z] = static_cast<std::uint32_t>(rng.below(K.order()));
        C = K.add(C, c[z]);
        D = K.add(D, K.mul(c[z], theta_s.eval_code(lt.up(lt.fq->neg(z)))));
      }
      if (C != 0 && D != 0) break;
    }
    const auto o = lemma41_instance(lt, rep, c);
    coeffs_ok += o.coeffs_ok;
    in_v += o.in_V;
    member += o.member;
    full += o.full;
    dims.push_back(o.spin_dim);
  }
  pr.expect("U s zeta coefficients (theta(-1)C, D)", trials, coeffs_ok);
  pr.expect("U s zeta lies in V", trials, in_v);
  pr.expect("U1 or Us1 in kG zeta", trials, member);
  pr.observe("kG zeta = Ind_T theta: passes", full);
  pr.observe("level", lt.level->order());
  pr.observe("theta_exponent_at_level", lt.theta.a);
  pr.observe("module_dim", lt.module->dim());
  pr.observe("spin_dims", dims);
  return pr;
}

// ---------------------------------------------------------------- M_+ and M_-

inline ProbeReport mplus_probe(std::uint64_t q, std::uint64_t r, std::uint64_t seed, std::size_t trials = 20) {
  require(r != 2, "mplus: r = 2 is excluded");
  const Field f = field_of_order(q);
  require(r != f->p(), "mplus: r must differ from p");
  const CoeffField coeff = make_coeff_field(r, 1);
  const FieldSpec& K = *coeff.field;
  ProbeReport pr{"mplus", q, r, std::nullopt, seed, {}, json::array()};
  Rng rng(seed, {0x6d2bULL, q, r});

  // M_+ = augmentation kernel of Ind_N k_+
  const ModulePtr plus = InducedModule::induce_normalizer(f, 1, coeff);
  const Rep plus_rep = plus->rep();
  EchelonBasis aug(coeff.field, plus->dim());
  for (std::uint32_t i = 1; i < plus->dim(); ++i) {
    Vec v(plus->dim(), 0);
    v[0] = K.neg(1);
    v[i] = 1;
    aug.add(std::move(v));
  }
  pr.check("M_+ G-stable", is_stable(plus_rep, aug));
  pr.expect("codim M_+", 1, plus->dim() - aug.size());
  std::size_t generates = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Vec v = random_dense(K, plus->dim(), rng);
    std::uint32_t sum = 0;
    for (auto x : v) sum = K.add(sum, x);
    if (sum == 0) v[0] = K.add(v[0], 1);
    generates += spin(plus_rep, {v}).dim() == plus->dim();
  }
  pr.observe("xi outside M_+ generates Ind_N k_+", json::array({generates, trials}));

  // M_- = span of the Lambda(z)
  const ModulePtr minus = InducedModule::induce_normalizer(f, -1, coeff);
  std::vector<Vec> lambdas;
  for (std::uint32_t z = 1; z < f->order(); ++z) lambdas.push_back(lambda_vec(minus, z).dense());
  const SpinResult mm = spin(minus->rep(), lambdas);
  pr.check("M_- G-stable", mm.complete);
  pr.expect("dim Ind_N k_- / M_-", q, minus->dim() - mm.dim());

  // h(t0) U zeta + U zeta = 2C U 1_-, hosted where t0^2 = -1 lives
  const FieldElement t0_ext = sqrt_ext(FieldElement::from_int(f, -1));
  std::uint32_t t0 = 0;
  Field host = f;
  if (!Embedding(f, t0_ext.owner()).restrict(t0_ext.code(), t0)) {
    host = t0_ext.owner();
    t0 = t0_ext.code();
  }
  const Embedding up(f, host);
  const ModulePtr mh = InducedModule::induce_normalizer(host, -1, coeff);
  const AlgebraElement u = ubar(mh, f);
  const GroupElement ht0 = mk_h(host, t0);
  const FieldSpec& Fq = *f;
  std::size_t ok = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    ModuleVector zeta(mh);
    std::uint32_t C = 0;
    while (C == 0) {
      zeta = ModuleVector(mh);
      C = 0;
      for (std::uint32_t x = 1; x < Fq.order(); ++x)
        for (std::uint32_t y = 1; y < Fq.order(); ++y) {
          if (Fq.mul(x, y) == 1) continue;
          const auto a = static_cast<std::uint32_t>(rng.below(K.order()));
          if (a != 0) zeta = zeta + act(mk_eps(host, up(x)), lambda_vec(mh, up(y))).scaled(a);
        }
      for (std::uint32_t z = 1; z < Fq.order(); ++z) {
        const auto b = static_cast<std::uint32_t>(rng.below(K.order()));
        if (b != 0) zeta = zeta + lambda_vec(mh, up(z)).scaled(b);
      }
      for (std::uint32_t w = 0; w < Fq.order(); ++w) {
        const auto c = static_cast<std::uint32_t>(rng.below(K.order()));
        C = K.add(C, c);
        if (c != 0) zeta = zeta + translate_of_one(mh, mk_eps(host, up(w))).scaled(c);
      }
    }
    const ModuleVector uz = act(u, zeta);
    const ModuleVector lhs = act(ht0, uz) + uz;
    const ModuleVector rhs = act(u, ModuleVector::basis(mh, 0)).scaled(K.mul(K.from_int(2), C));
    ok += lhs == rhs;
  }
  pr.expect("h(t0) U zeta + U zeta = 2C U 1_-", trials, ok);
  pr.observe("t0_level", host->order());
  return pr;
}

// ---------------------------------------------------------------- principal series

/// Ind_B theta for the character of order `order` sending the generator to zeta_order^exponent.
/// Coefficients lie in the field carrying every character of F_q^* unless `minimal`, in which
/// case the smallest field carrying this one is used.
inline ModulePtr principal_series(std::uint64_t q, std::uint64_t r, std::uint64_t order, std::uint64_t exponent = 1,
                                  bool minimal = false) {
  const Field f = field_of_order(q);
  require(f->units() % order == 0, "principal_series: character order must divide q-1");
  require(order % r != 0, "principal_series: character order divisible by r");
  if (order == 1) exponent = 0;
  if (minimal) return InducedModule::induce_borel(make_character(f, make_coeff_field(r, order), exponent));
  const CoeffField cf = coeff_field_for(f, r);
  return InducedModule::induce_borel(make_character(f, cf, exponent * (cf.order / order)));
}

/// eta_s = (1 - s) 1_tr in Ind_B tr.
inline ModuleVector eta_s(const ModulePtr& borel) {
  require(borel->subgroup() == Subgroup::B && borel->theta()->is_trivial(), "eta_s: module must be Ind_B tr");
  return ModuleVector::basis(borel, 0) - translate_of_one(borel, mk_s(borel->level()));
}

inline ProbeReport spin_probe(std::uint64_t q, std::uint64_t r) {
  const ModulePtr b = principal_series(q, r, 1);
  const Rep rep = b->rep();
  ProbeReport pr{"spin", q, r, 0, 0, {}, json::array()};
  const SpinResult st = spin(rep, {eta_s(b).dense()});
  const SpinResult one = spin(rep, {Vec(ModuleVector::basis(b, 0).dense())});
  const SpinResult none = spin(rep, {});
  const std::uint64_t G = q * (q * q - 1);
  if (G % r != 0) pr.expect("dim kG eta_s (Steinberg)", q, st.dim());
  else pr.observe("dim kG eta_s", st.dim());
  pr.check("kG eta_s G-stable", st.complete);
  pr.expect("dim kG 1^_tr", q + 1, one.dim());
  pr.expect("dim spin(empty)", 0, none.dim());
  SpinResult again = spin(rep, st.basis.rows());
  pr.expect("spin idempotent", st.dim(), again.dim());
  return pr;
}

inline json factors_json(const ChopResult& c) {
  json j = json::array();
  for (auto d : c.factors) j.push_back(d);
  return j;
}

inline ProbeReport chop_probe(std::uint64_t q, std::uint64_t r, std::uint64_t seed) {
  const Field f = field_of_order(q);
  ProbeReport pr{"chop", q, r, std::nullopt, seed, {}, json::array()};
  MeatAxeOptions opt;
  opt.seed = seed;
  const auto tr = chop(principal_series(q, r, 1)->rep(), opt);
  pr.expect("chop Ind_B tr", json::array({1, q}), factors_json(tr));
  if (f->units() % 2 == 0 && r != 2) {
    const auto th2 = chop(principal_series(q, r, 2)->rep(), opt);
    pr.expect("chop Ind_B theta_2", json::array({(q + 1) / 2, (q + 1) / 2}), factors_json(th2));
  }
  // every nontrivial theta with theta^2 != 1
  const CoeffField cf = coeff_field_for(f, r);
  std::size_t simple_count = 0, considered = 0;
  for (std::uint64_t a = 1; a < cf.order; ++a) {
    const Character th = make_character(f, cf, a);
    if (th.order() <= 2) continue;
    ++considered;
    const auto c = chop(InducedModule::induce_borel(th)->rep(), opt);
    simple_count += c.decided && c.factors == std::vector<std::size_t>{q + 1};
  }
  if (considered > 0) pr.expect("chop Ind_B theta = {q+1} for theta^2 != 1", considered, simple_count);
  if (r != 2) {
    const CoeffField triv = make_coeff_field(r, 1);
    const auto np = chop(InducedModule::induce_normalizer(f, 1, triv)->rep(), opt);
    const auto nm = chop(InducedModule::induce_normalizer(f, -1, triv)->rep(), opt);
    std::size_t total = 0;
    for (auto d : np.factors) total += d;
    for (auto d : nm.factors) total += d;
    pr.expect("dims Ind_N k_+ + Ind_N k_-", q * (q + 1), total);
    pr.observe("chop Ind_N k_+", factors_json(np));
    pr.observe("chop Ind_N k_-", factors_json(nm));
  }
  return pr;
}

/// is_simple against the exhaustive oracle on principal series and their chop pieces.
inline ProbeReport simple_probe(std::uint64_t q, std::uint64_t r, std::uint64_t seed) {
  const Field f = field_of_order(q);
  ProbeReport pr{"simple", q, r, std::nullopt, seed, {}, json::array()};
  MeatAxeOptions opt;
  opt.seed = seed;
  std::vector<std::pair<std::string, Rep>> cases;
  for (std::uint64_t order = 1; order <= f->units(); ++order) {
    if (f->units() % order != 0 || order % r == 0) continue;
    cases.emplace_back("Ind_B theta order " + std::to_string(order), principal_series(q, r, order)->rep());
    const auto small = make_coeff_field(r, order);
    if (small.field != coeff_field_for(f, r).field)
      cases.emplace_back("Ind_B theta order " + std::to_string(order) + " over GF(" +
                             std::to_string(small.field->order()) + ")",
                         principal_series(q, r, order, 1, true)->rep());
  }
  std::size_t compared = 0, agreed = 0;
  json rows = json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Rep rep = cases[i].second;
    const auto mx = is_simple(rep, opt);
    // include the pieces of a split
    if (mx.verdict == Verdict::NotSimple) {
      cases.emplace_back(cases[i].first + " submodule", subrep(rep, *mx.witness));
      cases.emplace_back(cases[i].first + " quotient", quotient_rep(rep, *mx.witness));
    }
    if (detail::space_size(rep.field->order(), rep.dim, opt.brute_bound) == 0) {
      rows.push_back(json{{"module", cases[i].first}, {"dim", rep.dim}, {"meataxe", verdict_name(mx.verdict)},
                            {"brute_force", "infeasible"}});
      continue;
    }
    const auto bf = brute_force_is_simple(rep, opt.brute_bound);
    ++compared;
    agreed += bf.verdict == mx.verdict;
    rows.push_back(json{{"module", cases[i].first}, {"dim", rep.dim}, {"meataxe", verdict_name(mx.verdict)},
                          {"brute_force", verdict_name(bf.verdict)}});
  }
  pr.expect("is_simple agrees with brute force", compared, agreed);
  pr.observe("cases", rows);
  return pr;
}

}  // namespace crosschar
