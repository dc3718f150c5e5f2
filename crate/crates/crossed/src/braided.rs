//! Braidings on matched pairs, the Turaev braiding and the induced pair on (G⋈Γ, G×Γ).

use serde_json::json;

use crate::group::{direct_product, FiniteGroup, GroupHom};
use crate::matched::{zappa_szep, MatchedError, MatchedPair};
use crate::report::{first_failure, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidedMatchedPair {
    pub mp: MatchedPair,
    /// Γ → G
    pub phi: GroupHom,
    /// Γ → G
    pub psi: GroupHom,
}

pub fn verify_braiding(b: &BraidedMatchedPair) -> VerificationReport {
    let mut r = VerificationReport::new();
    let mp = &b.mp;
    let (g, gm) = (&mp.g, &mp.gamma);
    let typed = |f: &GroupHom| f.source == *gm && f.target == *g;
    r.check("phi.hom", (!typed(&b.phi)).then(|| json!({"error": "phi must map Gamma to G"})).or_else(|| b.phi.failure().map(|e| e.witness())));
    r.check("psi.hom", (!typed(&b.psi)).then(|| json!({"error": "psi must map Gamma to G"})).or_else(|| b.psi.failure().map(|e| e.witness())));
    if !r.passed() {
        return r;
    }
    let (phi, psi) = (|x| b.phi.apply(x), |x| b.psi.apply(x));
    r.check(
        "axiom1",
        first_failure(&[gm.order(), gm.order()], |i| {
            let (s, t) = (i[0], i[1]);
            let lhs = gm.mul(mp.a1(phi(s), t), s);
            let rhs = gm.mul(mp.a1(psi(t), s), t);
            (lhs != rhs).then(|| json!({"s": s, "t": t, "lhs": lhs, "rhs": rhs}))
        }),
    );
    for (name, f) in [("axiom2", &phi as &(dyn Fn(usize) -> usize + Sync)), ("axiom3", &psi)] {
        r.check(
            name,
            first_failure(&[g.order(), gm.order()], |i| {
                let (x, s) = (i[0], i[1]);
                let lhs = g.mul(mp.a2(s, x), f(s));
                let rhs = g.mul(f(mp.a1(x, s)), x);
                (lhs != rhs).then(|| json!({"g": x, "s": s, "lhs": lhs, "rhs": rhs}))
            }),
        );
    }
    r.check(
        "axiom4",
        first_failure(&[gm.order(), gm.order()], |i| {
            let (s, t) = (i[0], i[1]);
            let lhs = mp.a2(s, phi(t));
            let rhs = phi(mp.a1(psi(s), t));
            (lhs != rhs).then(|| json!({"s": s, "t": t, "lhs": lhs, "rhs": rhs}))
        }),
    );
    r.check(
        "axiom5",
        first_failure(&[gm.order(), gm.order()], |i| {
            let (s, t) = (i[0], i[1]);
            let lhs = mp.a2(s, psi(t));
            let rhs = psi(mp.a1(phi(s), t));
            (lhs != rhs).then(|| json!({"s": s, "t": t, "lhs": lhs, "rhs": rhs}))
        }),
    );
    r
}

/// φ trivial, ψ the identity, over the adjoint pair.
pub fn turaev_braiding(g: &FiniteGroup) -> BraidedMatchedPair {
    BraidedMatchedPair {
        mp: crate::matched::turaev_pair(g),
        phi: GroupHom::trivial(g.clone(), g.clone()),
        psi: g.identity_hom(),
    }
}

/// Encoding helpers for the center pair: G⋈Γ and G×Γ both use g·|Γ| + s.
#[derive(Debug, Clone, Copy)]
pub struct PairCodec {
    pub n_gamma: usize,
}

impl PairCodec {
    #[inline]
    pub fn enc(&self, g: usize, s: usize) -> usize {
        g * self.n_gamma + s
    }
    #[inline]
    pub fn dec(&self, x: usize) -> (usize, usize) {
        (x / self.n_gamma, x % self.n_gamma)
    }
}

/// g ▷₁^G (h,t) = ((t ▷₂ g)·h·g⁻¹, g ▷₁ t)
pub fn g_act_grade(mp: &MatchedPair, g: usize, (h, t): (usize, usize)) -> (usize, usize) {
    let gg = &mp.g;
    (gg.mul(gg.mul(mp.a2(t, g), h), gg.inv(g)), mp.a1(g, t))
}

/// s ▷₁^Γ (h,t) = (s ▷₂ h, (h ▷₁ s)·t·s⁻¹)
pub fn gamma_act_grade(mp: &MatchedPair, s: usize, (h, t): (usize, usize)) -> (usize, usize) {
    let gm = &mp.gamma;
    (mp.a2(s, h), gm.mul(gm.mul(mp.a1(h, s), t), gm.inv(s)))
}

/// (g,s) ▷̃₁ (h,t) = g ▷₁^G (s ▷₁^Γ (h,t))
pub fn center_act1(mp: &MatchedPair, (g, s): (usize, usize), ht: (usize, usize)) -> (usize, usize) {
    g_act_grade(mp, g, gamma_act_grade(mp, s, ht))
}

/// (h,t) ▷̃₂ (g,s) = ((s ▷₁^Γ (h,t)) ▷₂^G g, (h,t) ▷₂^Γ s), where (h',t') ▷₂^G g = t' ▷₂ g
/// and (h,t) ▷₂^Γ s = h ▷₁ s.
pub fn center_act2(mp: &MatchedPair, (h, t): (usize, usize), (g, s): (usize, usize)) -> (usize, usize) {
    let (_, t2) = gamma_act_grade(mp, s, (h, t));
    (mp.a2(t2, g), mp.a1(h, s))
}

/// The matched pair (G⋈Γ, G×Γ, ▷̃₁, ▷̃₂).
pub fn center_pair(mp: &MatchedPair) -> Result<MatchedPair, MatchedError> {
    let zs = zappa_szep(mp)?;
    let prod = direct_product(&mp.g, &mp.gamma);
    let c = PairCodec { n_gamma: mp.gamma.order() };
    let n = zs.group.order();
    let act1 = (0..n)
        .map(|x| (0..n).map(|y| { let (a, b) = center_act1(mp, c.dec(x), c.dec(y)); c.enc(a, b) }).collect())
        .collect();
    let act2 = (0..n)
        .map(|y| (0..n).map(|x| { let (a, b) = center_act2(mp, c.dec(y), c.dec(x)); c.enc(a, b) }).collect())
        .collect();
    Ok(MatchedPair::new(zs.group, prod, act1, act2))
}

/// φ(h,t) = (e,t) and ψ(h,t) = (h,e) on the center pair.
pub fn center_braiding(mp: &MatchedPair) -> Result<BraidedMatchedPair, MatchedError> {
    let cp = center_pair(mp)?;
    let c = PairCodec { n_gamma: mp.gamma.order() };
    let (eg, es) = (mp.g.identity(), mp.gamma.identity());
    let n = cp.gamma.order();
    let phi_img: Vec<usize> = (0..n).map(|x| c.enc(eg, c.dec(x).1)).collect();
    let psi_img: Vec<usize> = (0..n).map(|x| c.enc(c.dec(x).0, es)).collect();
    let phi = GroupHom { source: cp.gamma.clone(), target: cp.g.clone(), image: phi_img };
    let psi = GroupHom { source: cp.gamma.clone(), target: cp.g.clone(), image: psi_img };
    Ok(BraidedMatchedPair { mp: cp, phi, psi })
}

/// The alternative ψ(h,t) = (h,t), kept for diagnostics: it fails whenever Γ is nonabelian.
pub fn center_braiding_identity_psi(mp: &MatchedPair) -> Result<BraidedMatchedPair, MatchedError> {
    let mut b = center_braiding(mp)?;
    b.psi.image = (0..b.mp.gamma.order()).collect();
    Ok(b)
}
