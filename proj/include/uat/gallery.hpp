#pragma once

#include <string>
#include <vector>

#include "uat/io.hpp"

namespace uat {

struct GalleryResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "  ok: " : "  FAIL: ") + what);
  }
  void info(const std::string& what) { lines.push_back("  " + what); }
};

/// The circle-power recursion: (x+iy)^n = phi_n(x) + i psi_n(x) y modulo
/// x^2 + y^2 - 1, with deg phi_n = n, deg psi_n = n-1 and equal leading
/// coefficients, phi/psi given by phi' = X phi + (X^2-1) psi, psi' = X psi + phi.
inline GalleryResult gallery_phi_psi(long n_max) {
  GalleryResult out;
  out.name = "phi-psi";
  TowerPtr q = FieldTower::rationals();
  TowerPtr qi = q->extend("i", {q->one(), q->zero(), q->one()});
  CtxPtr ctx = make_context(qi, {"X", "Y"});
  IdealPtr circle = share(IdealContext::make(ctx, {parse_poly("X^2 + Y^2 - 1", ctx)}));

  UPoly phi = UPoly::x(q);                       // phi_1 = X
  UPoly psi = UPoly::constant(q, q->one());      // psi_1 = 1
  UPoly xq = UPoly::x(q);
  UPoly x2m1 = xq * xq - UPoly::constant(q, q->one());

  MultiPoly base = parse_poly("X + i*Y", ctx);
  MultiPoly power = circle->reduce(base);
  FieldElement igen = qi->generator(0);
  bool all_ok = true;
  for (long n = 1; n <= n_max; ++n) {
    bool deg_ok = phi.deg() == n && psi.deg() == n - 1;
    bool lead_ok = phi.lc() == psi.lc();
    // assemble phi_n(X) + i psi_n(X) Y over QQ(i)[X, Y]
    MultiPoly f = MultiPoly::zero(ctx);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(phi.deg()); ++k)
      f = f + MultiPoly::variable(ctx, 0, static_cast<std::uint32_t>(k))
                  .scalar_mul(phi.coeff(k).embed_into(qi));
    for (std::size_t k = 0; k <= static_cast<std::size_t>(psi.deg()); ++k)
      f = f + (MultiPoly::variable(ctx, 0, static_cast<std::uint32_t>(k)) *
               MultiPoly::variable(ctx, 1))
                  .scalar_mul(psi.coeff(k).embed_into(qi) * igen);
    bool id_ok = circle->reduce(f) == power;
    if (!(deg_ok && lead_ok && id_ok)) {
      out.check(false, "n = " + std::to_string(n) + (deg_ok ? "" : " [degree]") +
                           (lead_ok ? "" : " [leading coefficient]") +
                           (id_ok ? "" : " [power identity]"));
      all_ok = false;
    }
    UPoly phi_next = xq * phi + x2m1 * psi;
    UPoly psi_next = xq * psi + phi;
    phi = phi_next;
    psi = psi_next;
    power = circle->reduce(power * base);
  }
  out.check(all_ok, "degrees, leading coefficients, and the power identity for n <= " +
                        std::to_string(n_max));
  return out;
}

/// The circle: unit-additive over the rationals at the searched bounds, not
/// unit-additive after adjoining i, hence not geometrically unit-additive.
inline GalleryResult gallery_circle(const std::string& data_dir) {
  GalleryResult out;
  out.name = "circle";
  IdealFile fq = load_ideal_file(data_dir + "/circle_q.ideal");
  IdealFile fqi = load_ideal_file(data_dir + "/circle_qi.ideal");
  IdealPtr Rq = make_ideal(fq);
  IdealPtr Rqi = make_ideal(fqi);

  SearchParams pi;
  pi.max_degree = 1;
  pi.pool = gaussian_pool(fqi.tower);
  WitnessReport wi = ua_refute(Rqi, pi);
  out.check(wi.outcome == WitnessReport::Outcome::witness &&
                poly_to_string(*wi.witness) == "X + i*Y",
            "adjoined-i circle: witness x + iy at degree 1");
  out.check(wi.witness_inverse &&
                Rqi->reduce(*wi.witness_inverse) ==
                    Rqi->reduce(parse_poly("X - i*Y", fqi.ctx)),
            "inverse verifies as x - iy");
  out.check(wi.successor &&
                wi.successor->verdict == Classification::Verdict::neither,
            "x + iy + 1 is neither a unit nor nilpotent");

  SearchParams pq;
  pq.max_degree = 2;
  pq.pool = small_pool(fq.tower);
  WitnessReport wq = ua_refute(Rq, pq);
  out.check(wq.outcome == WitnessReport::Outcome::exhausted,
            "rational circle: degree-2 search exhausts");
  out.check(wq.units_found == 4, "every unit found is a nonzero constant");

  UPoly t2p1(fq.tower, {fq.tower->one(), fq.tower->zero(), fq.tower->one()});
  SearchParams pg;
  pg.max_degree = 1;
  pg.pool = small_pool(fq.tower);
  ExtensionProbe probe = geometric_ua_refute(Rq, {{"i", t2p1}}, pg);
  out.check(probe.witness_found,
            "geometric probe with t^2+1 refutes geometric unit-additivity");
  UPoly lin(fq.tower, {-fq.tower->one(), fq.tower->one()});
  ExtensionProbe trivial = geometric_ua_refute(Rq, {{"a", lin}}, pg);
  out.check(!trivial.witness_found, "the degree-1 extension probe exhausts");

  UAVerdict not_ua;
  not_ua.ua = Tri::no;
  not_ua.witness = wi.witness;
  not_ua.witness_successor = wi.successor;
  not_ua.provenance = "refutation witness";
  FundamentalityVerdict fv = bridge_report(Rqi, not_ua);
  out.check(fv.fundamental == Tri::no,
            "bridge: the adjoined-i circle is not fundamental");

  SearchParams pf;
  pf.max_degree = 1;
  pf.pool.description = "{0, 1, -1}";
  for (int v : {0, 1, -1}) pf.pool.values.push_back(fq.tower->from_integer(v));
  out.check(fundamental_refute(Rq, pf).outcome ==
                WitnessReport::Outcome::exhausted,
            "rational circle: fundamentality refuter exhausts at degree 1");
  return out;
}

/// Components of V(xyz - z): the minimal primes verify, the hyperbola factor
/// is refuted, and the whole ring's bounded search exhausts, so the
/// one-directional component inference stays inapplicable.
inline GalleryResult gallery_components(const std::string& data_dir) {
  GalleryResult out;
  out.name = "components";
  IdealFile f = load_ideal_file(data_dir + "/cantdescend.ideal");
  IdealPtr R = make_ideal(f);
  IdealPtr Z = share(IdealContext::make(f.ctx, {parse_poly("Z", f.ctx)}));
  IdealPtr H = share(IdealContext::make(f.ctx, {parse_poly("X*Y - 1", f.ctx)}));

  out.check(ideal_equal(intersect(*Z, *H), *R),
            "(z) intersected with (xy - 1) equals (xyz - z)");
  out.check(verify_minimal_primes(*R, {H, Z}).passed,
            "claimed minimal primes verify (primality itself unchecked)");
  out.check(ideal_sum(*Z, *H).is_proper(), "(z) + (xy - 1) is proper");

  SearchParams p1;
  p1.max_degree = 1;
  p1.pool = small_pool(f.tower);
  WitnessReport w = ua_refute(H, p1);
  out.check(w.outcome == WitnessReport::Outcome::witness &&
                poly_to_string(*w.witness) == "X",
            "quotient by (xy - 1): witness x at degree 1");

  SearchParams p2;
  p2.max_degree = 2;
  p2.pool.description = "{0, 1, -1}";
  for (int v : {0, 1, -1}) p2.pool.values.push_back(f.tower->from_integer(v));
  WitnessReport wr = ua_refute(R, p2);
  out.check(wr.outcome == WitnessReport::Outcome::exhausted,
            "whole ring: degree-2 search exhausts (units stay constant)");

  UAVerdict not_ua;
  not_ua.ua = Tri::no;
  not_ua.witness = w.witness;
  auto poly_ring = polynomial_ring_verdict(*Z);
  out.check(poly_ring.has_value(), "quotient by (z) is a polynomial ring");
  ConnectednessEvidence conn;
  conn.note = "the component varieties meet";
  UAVerdict inf = infer_ua_from_min_primes(R, {H, Z}, {not_ua, *poly_ring}, conn);
  out.check(inf.ua == Tri::unknown &&
                inf.reason.find("one-directional") != std::string::npos,
            "component inference is inapplicable, not a refutation");
  return out;
}

/// The two-point set {0, 1}: locally fundamental always, fundamental only
/// over the 2-element field.
inline GalleryResult gallery_two_points(const std::string& data_dir) {
  GalleryResult out;
  out.name = "two-points";
  PointsFile pq = load_points_file(data_dir + "/points_01_Q.pts");
  FundamentalityVerdict v = finite_set_decide(pq.set);
  out.check(v.fundamental == Tri::no && v.locally_fundamental == Tri::yes,
            "over the rationals: not fundamental, locally fundamental");
  out.check(v.witness.has_value() && v.witness_values.size() == 2 &&
                v.witness_values[0] != v.witness_values[1],
            "interpolated witness takes two distinct nonzero values");

  IdealFile fi = load_ideal_file(data_dir + "/two_points.ideal");
  IdealPtr I = make_ideal(fi);
  SearchParams p;
  p.max_degree = 1;
  p.pool = small_pool(fi.tower);
  FundamentalSearch fs = fundamental_refute(I, p);
  out.check(fs.outcome == WitnessReport::Outcome::witness,
            "the vanishing-ideal refuter finds a degree-1 witness");
  std::string why;
  out.check(verify_fundamental_witness(*I, parse_poly("X - 2", fi.ctx), p.pool,
                                       &why),
            "x - 2 passes all three witness checks");

  PointsFile pf2 = load_points_file(data_dir + "/points_01_F2.pts");
  out.check(finite_set_decide(pf2.set).fundamental == Tri::yes,
            "over the 2-element field: fundamental");

  TowerPtr f2 = FieldTower::prime_field(2);
  CtxPtr c2 = make_context(f2, {"X"});
  IdealPtr I2 = share(IdealContext::make(c2, {parse_poly("X^2 - X", c2)}));
  UAVerdict ua2 = zero_dim_ua_decide(I2);
  out.check(ua2.ua == Tri::yes, "its coordinate ring over GF(2) is unit-additive");
  out.check(cross_check(I2).agree, "the exhaustive oracle agrees element-wise");

  UAVerdict uaq = zero_dim_ua_decide(I);
  out.check(uaq.ua == Tri::no && v.fundamental == Tri::no,
            "bridge consistency: both sides refuse over the rationals");
  return out;
}

/// A product of UU rings is unit-additive even though its spectrum is
/// disconnected: GF(2) x GF(2)[t] presented by (u^2 - u, t(u - 1)).
inline GalleryResult gallery_product_uu(const std::string& data_dir) {
  GalleryResult out;
  out.name = "product-uu";
  IdealFile f = load_ideal_file(data_dir + "/refconn_f2.ideal");
  IdealPtr I = make_ideal(f);
  DecompositionCertificate cert =
      split_by_idempotent(I, parse_poly("U", f.ctx));
  out.check(cert.verified, "idempotent split verifies");
  std::vector<UAVerdict> per;
  for (const auto& comp : cert.components) {
    if (auto v = polynomial_ring_verdict(*comp))
      per.push_back(*v);
    else
      per.push_back(zero_dim_ua_decide(comp));
  }
  UAVerdict v = locally_ua_from_decomposition(cert, per);
  out.check(v.locally_ua == Tri::yes, "locally unit-additive by the product rule");
  out.check(v.ua == Tri::yes && v.uu == Tri::yes,
            "every component is UU, so the whole ring is unit-additive");

  FiniteRing z8 = FiniteRing::mod_n(8);
  out.check(decide_uu(z8) && decide_ua(z8),
            "oracle: Z/8 is UU and unit-additive");

  CtxPtr cxy = make_context(FieldTower::prime_field(2), {"U", "T"});
  IdealPtr free2 = share(IdealContext::make(cxy, {parse_poly("0", cxy)}));
  SearchParams p;
  p.max_degree = 1;
  p.pool = all_elements_pool(cxy->tower);
  out.check(uu_refute(free2, p).outcome == WitnessReport::Outcome::exhausted,
            "GF(2)[u, t]: the UU refuter exhausts (1 is the only unit found)");
  return out;
}

inline std::vector<GalleryResult> run_gallery(const std::string& name,
                                              const std::string& data_dir,
                                              long phi_psi_n) {
  std::vector<GalleryResult> out;
  if (name == "phi-psi" || name == "all") out.push_back(gallery_phi_psi(phi_psi_n));
  if (name == "circle" || name == "all") out.push_back(gallery_circle(data_dir));
  if (name == "components" || name == "all")
    out.push_back(gallery_components(data_dir));
  if (name == "two-points" || name == "all")
    out.push_back(gallery_two_points(data_dir));
  if (name == "product-uu" || name == "all")
    out.push_back(gallery_product_uu(data_dir));
  if (out.empty())
    throw Error("unknown example '" + name +
                "' (expected phi-psi, circle, components, two-points, "
                "product-uu, or all)");
  return out;
}

}  // namespace uat
