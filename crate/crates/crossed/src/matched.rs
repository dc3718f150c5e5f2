//! Matched pairs of groups, the Zappa-Szep product and exact factorizations.

use serde_json::{json, Value};
use thiserror::Error;

use crate::group::{self, FiniteGroup, GroupActionOnSet, GroupError, GroupHom, Side};
use crate::report::{first_failure, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchedError {
    #[error("not a matched pair: failing checks {0:?}")]
    NotMatched(Vec<String>),
    #[error("not an exact factorization: {0}")]
    NotExact(String),
    #[error("product table is not a group: {0}")]
    ProductNotGroup(#[from] GroupError),
}

/// `act1[g][s] = g ▷₁ s` and `act2[s][g] = s ▷₂ g`, both left actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedPair {
    pub g: FiniteGroup,
    pub gamma: FiniteGroup,
    pub act1: GroupActionOnSet,
    pub act2: GroupActionOnSet,
}

impl MatchedPair {
    pub fn new(g: FiniteGroup, gamma: FiniteGroup, act1: Vec<Vec<usize>>, act2: Vec<Vec<usize>>) -> Self {
        let act1 = GroupActionOnSet { actor: g.clone(), set_size: gamma.order(), table: act1, side: Side::Left };
        let act2 = GroupActionOnSet { actor: gamma.clone(), set_size: g.order(), table: act2, side: Side::Left };
        MatchedPair { g, gamma, act1, act2 }
    }

    /// Both actions trivial.
    pub fn trivial(g: FiniteGroup, gamma: FiniteGroup) -> Self {
        let act1 = vec![(0..gamma.order()).collect(); g.order()];
        let act2 = vec![(0..g.order()).collect(); gamma.order()];
        MatchedPair::new(g, gamma, act1, act2)
    }

    /// g ▷₁ s
    #[inline]
    pub fn a1(&self, g: usize, s: usize) -> usize {
        self.act1.table[g][s]
    }

    /// s ▷₂ g
    #[inline]
    pub fn a2(&self, s: usize, g: usize) -> usize {
        self.act2.table[s][g]
    }

    pub fn is_verified(&self) -> bool {
        verify_matched_pair(self).passed()
    }

    pub fn require_verified(&self) -> Result<(), MatchedError> {
        let r = verify_matched_pair(self);
        if r.passed() {
            Ok(())
        } else {
            Err(MatchedError::NotMatched(r.failures().map(|c| c.name.clone()).collect()))
        }
    }
}

pub fn verify_matched_pair(mp: &MatchedPair) -> VerificationReport {
    let mut r = VerificationReport::new();
    let (g, gm) = (&mp.g, &mp.gamma);
    let side1 = (mp.act1.side != Side::Left).then(|| json!({"side": "right"}));
    let side2 = (mp.act2.side != Side::Left).then(|| json!({"side": "right"}));
    let shape1 = mp
        .act1
        .shape_failure()
        .or_else(|| (mp.act1.actor != *g || mp.act1.set_size != gm.order()).then(|| json!({"mismatch": "act1"})));
    let shape2 = mp
        .act2
        .shape_failure()
        .or_else(|| (mp.act2.actor != *gm || mp.act2.set_size != g.order()).then(|| json!({"mismatch": "act2"})));
    let shapes_ok = shape1.is_none() && shape2.is_none();
    r.check("act1.side", side1);
    r.check("act2.side", side2);
    r.check("act1.shape", shape1);
    r.check("act2.shape", shape2);
    if !shapes_ok {
        return r;
    }
    r.check("act1.identity", mp.act1.identity_failure());
    r.check("act1.action", mp.act1.compat_failure());
    r.check("act2.identity", mp.act2.identity_failure());
    r.check("act2.action", mp.act2.compat_failure());
    r.check(
        "act1.fixes_unit",
        first_failure(&[g.order()], |i| {
            (mp.a1(i[0], gm.identity()) != gm.identity()).then(|| json!({"g": i[0]}))
        }),
    );
    r.check(
        "act2.fixes_unit",
        first_failure(&[gm.order()], |i| {
            (mp.a2(i[0], g.identity()) != g.identity()).then(|| json!({"s": i[0]}))
        }),
    );
    // g ▷₁ (st) = ((t ▷₂ g) ▷₁ s)(g ▷₁ t)
    r.check(
        "match1",
        first_failure(&[g.order(), gm.order(), gm.order()], |i| {
            let (x, s, t) = (i[0], i[1], i[2]);
            let lhs = mp.a1(x, gm.mul(s, t));
            let rhs = gm.mul(mp.a1(mp.a2(t, x), s), mp.a1(x, t));
            (lhs != rhs).then(|| json!({"g": x, "s": s, "t": t, "lhs": lhs, "rhs": rhs}))
        }),
    );
    // s ▷₂ (gh) = ((h ▷₁ s) ▷₂ g)(s ▷₂ h)
    r.check(
        "match2",
        first_failure(&[gm.order(), g.order(), g.order()], |i| {
            let (s, x, y) = (i[0], i[1], i[2]);
            let lhs = mp.a2(s, g.mul(x, y));
            let rhs = g.mul(mp.a2(mp.a1(y, s), x), mp.a2(s, y));
            (lhs != rhs).then(|| json!({"s": s, "g": x, "h": y, "lhs": lhs, "rhs": rhs}))
        }),
    );
    r
}

#[derive(Debug, Clone)]
pub struct ZappaSzep {
    pub group: FiniteGroup,
    pub embed_g: GroupHom,
    pub embed_gamma: GroupHom,
}

impl ZappaSzep {
    /// (g, s) ↦ g·|Γ| + s
    pub fn encode(&self, g: usize, s: usize) -> usize {
        g * self.embed_gamma.source.order() + s
    }

    pub fn decode(&self, x: usize) -> (usize, usize) {
        let n = self.embed_gamma.source.order();
        (x / n, x % n)
    }
}

/// Product of (g,s) and (g',s') on G×Γ: ( g·(s ▷₂ g'⁻¹)⁻¹ , (g'⁻¹ ▷₁ s)·s' ).
pub fn zs_mul(mp: &MatchedPair, (g1, s1): (usize, usize), (g2, s2): (usize, usize)) -> (usize, usize) {
    let (g, gm) = (&mp.g, &mp.gamma);
    let g2i = g.inv(g2);
    (g.mul(g1, g.inv(mp.a2(s1, g2i))), gm.mul(mp.a1(g2i, s1), s2))
}

pub fn zappa_szep(mp: &MatchedPair) -> Result<ZappaSzep, MatchedError> {
    mp.require_verified()?;
    Ok(zappa_szep_unchecked(mp)?)
}

/// Builds the product table without verifying the pair first.
pub fn zappa_szep_unchecked(mp: &MatchedPair) -> Result<ZappaSzep, GroupError> {
    let (m, n) = (mp.g.order(), mp.gamma.order());
    let table: Vec<Vec<usize>> = (0..m * n)
        .map(|x| {
            (0..m * n)
                .map(|y| {
                    let (a, b) = zs_mul(mp, (x / n, x % n), (y / n, y % n));
                    a * n + b
                })
                .collect()
        })
        .collect();
    let name = format!("{}⋈{}", mp.g.name(), mp.gamma.name());
    let group = group::validate_named(&name, table, mp.g.identity() * n + mp.gamma.identity())?;
    let embed_g = GroupHom::new(
        mp.g.clone(),
        group.clone(),
        (0..m).map(|a| a * n + mp.gamma.identity()).collect(),
    )
    .expect("G embeds");
    let embed_gamma = GroupHom::new(
        mp.gamma.clone(),
        group.clone(),
        (0..n).map(|s| mp.g.identity() * n + s).collect(),
    )
    .expect("Gamma embeds");
    Ok(ZappaSzep { group, embed_g, embed_gamma })
}

/// Extracts the matched pair of an exact factorization H = G·Γ. Elements of the factors are
/// re-indexed by position in the sorted subsets.
pub fn from_exact_factorization(h: &FiniteGroup, gset: &[usize], gammaset: &[usize]) -> Result<MatchedPair, MatchedError> {
    let mut gset = gset.to_vec();
    let mut gammaset = gammaset.to_vec();
    gset.sort_unstable();
    gset.dedup();
    gammaset.sort_unstable();
    gammaset.dedup();
    if gset.iter().chain(&gammaset).any(|&x| x >= h.order()) {
        return Err(MatchedError::NotExact("index out of range".into()));
    }
    if !h.is_subgroup(&gset) {
        return Err(MatchedError::NotExact("G is not a subgroup".into()));
    }
    if !h.is_subgroup(&gammaset) {
        return Err(MatchedError::NotExact("Gamma is not a subgroup".into()));
    }
    if gset.iter().filter(|x| gammaset.binary_search(x).is_ok()).count() != 1 {
        return Err(MatchedError::NotExact("subgroups intersect nontrivially".into()));
    }
    if gset.len() * gammaset.len() != h.order() {
        return Err(MatchedError::NotExact(format!(
            "|G|·|Gamma| = {} ≠ |H| = {}",
            gset.len() * gammaset.len(),
            h.order()
        )));
    }
    // factor[x] = (a, b) with x = gset[a]·gammaset[b]
    let mut factor = vec![None; h.order()];
    for (a, &x) in gset.iter().enumerate() {
        for (b, &y) in gammaset.iter().enumerate() {
            factor[h.mul(x, y)] = Some((a, b));
        }
    }
    let factor: Vec<(usize, usize)> = factor.into_iter().map(|f| f.expect("exact factorization covers H")).collect();
    let g = h.restrict(&gset).with_name(format!("{}:G", h.name()));
    let gamma = h.restrict(&gammaset).with_name(format!("{}:Gamma", h.name()));
    // s·g⁻¹ = (s ▷₂ g)⁻¹ (g ▷₁ s)
    let mut act1 = vec![vec![0; gamma.order()]; g.order()];
    let mut act2 = vec![vec![0; g.order()]; gamma.order()];
    for (sg, &s) in gammaset.iter().enumerate() {
        for (gg, &x) in gset.iter().enumerate() {
            let (a, b) = factor[h.mul(s, h.inv(x))];
            act2[sg][gg] = g.inv(a);
            act1[gg][sg] = b;
        }
    }
    Ok(MatchedPair::new(g, gamma, act1, act2))
}

/// The map (g,s) ↦ g·s from the Zappa-Szep product of an extracted pair back into H.
pub fn factorization_map(h: &FiniteGroup, gset: &[usize], gammaset: &[usize]) -> Vec<usize> {
    let mut gset = gset.to_vec();
    let mut gammaset = gammaset.to_vec();
    gset.sort_unstable();
    gammaset.sort_unstable();
    let mut out = Vec::with_capacity(h.order());
    for &x in &gset {
        for &y in &gammaset {
            out.push(h.mul(x, y));
        }
    }
    out
}

/// (G, G, adjoint action, trivial action).
pub fn turaev_pair(g: &FiniteGroup) -> MatchedPair {
    let act1 = g.elements().map(|x| g.elements().map(|y| g.conj(x, y)).collect()).collect();
    let act2 = vec![g.elements().collect(); g.order()];
    MatchedPair::new(g.clone(), g.clone(), act1, act2)
}

/// Relabels a report failure into a compact JSON error payload.
pub fn failure_summary(r: &VerificationReport) -> Value {
    json!(r.failures().map(|c| json!({"name": c.name, "witness": c.witness})).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, find_isomorphism, perm_index, subgroup_from_generators, symmetric_with_perms, trivial};

    fn z2_z3_inversion() -> MatchedPair {
        let (g, gm) = (cyclic(2), cyclic(3));
        let act1 = vec![vec![0, 1, 2], vec![0, 2, 1]];
        MatchedPair::new(g.clone(), gm, act1, vec![vec![0, 1]; 3])
    }

    #[test]
    fn inversion_pair_verifies() {
        let mp = z2_z3_inversion();
        assert!(verify_matched_pair(&mp).passed());
        let zs = zappa_szep(&mp).unwrap();
        assert_eq!(zs.group.order(), 6);
        assert!(!zs.group.is_abelian());
        assert!(find_isomorphism(&zs.group, &crate::group::symmetric(3)).is_some());
    }

    #[test]
    fn corrupted_act1_fails_with_witness() {
        let mut mp = z2_z3_inversion();
        mp.act1.table[1][1] = 1;
        let r = verify_matched_pair(&mp);
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.witness.is_some()));
    }

    #[test]
    fn trivial_gamma_always_matched() {
        let mp = MatchedPair::trivial(crate::group::symmetric(3), trivial());
        assert!(verify_matched_pair(&mp).passed());
    }

    #[test]
    fn trivial_actions_give_direct_product() {
        let (a, b) = (cyclic(2), cyclic(3));
        let zs = zappa_szep(&MatchedPair::trivial(a.clone(), b.clone())).unwrap();
        assert_eq!(zs.group.table_rows(), direct_product(&a, &b).table_rows());
    }

    #[test]
    fn s3_factorization_round_trips() {
        let (s3, perms) = symmetric_with_perms(3);
        let gset = subgroup_from_generators(&s3, &[perm_index(&perms, &[1, 0, 2])]);
        let gamma = subgroup_from_generators(&s3, &[perm_index(&perms, &[1, 2, 0])]);
        let mp = from_exact_factorization(&s3, &gset, &gamma).unwrap();
        assert!(verify_matched_pair(&mp).passed());
        let zs = zappa_szep(&mp).unwrap();
        let f = GroupHom::new(zs.group.clone(), s3.clone(), factorization_map(&s3, &gset, &gamma)).unwrap();
        assert!(f.is_bijective());
    }

    #[test]
    fn s4_factorization() {
        let (s4, perms) = symmetric_with_perms(4);
        let gset = subgroup_from_generators(&s4, &[perm_index(&perms, &[1, 2, 3, 0])]);
        let gamma = subgroup_from_generators(
            &s4,
            &[perm_index(&perms, &[1, 0, 2, 3]), perm_index(&perms, &[1, 2, 0, 3])],
        );
        let mp = from_exact_factorization(&s4, &gset, &gamma).unwrap();
        assert_eq!((mp.g.order(), mp.gamma.order()), (4, 6));
        assert!(verify_matched_pair(&mp).passed());
        let zs = zappa_szep(&mp).unwrap();
        assert!(find_isomorphism(&zs.group, &s4).is_some());
    }

    #[test]
    fn direct_product_factors_act_trivially() {
        let h = direct_product(&cyclic(2), &cyclic(3));
        let gset: Vec<usize> = (0..2).map(|a| a * 3).collect();
        let gamma: Vec<usize> = (0..3).collect();
        let mp = from_exact_factorization(&h, &gset, &gamma).unwrap();
        assert!(mp.act1.is_trivial() && mp.act2.is_trivial());
    }

    #[test]
    fn not_exact_is_rejected() {
        let s3 = crate::group::symmetric(3);
        assert!(matches!(
            from_exact_factorization(&s3, &[0], &[0]),
            Err(MatchedError::NotExact(_))
        ));
    }

    #[test]
    fn turaev_pairs() {
        let mp = turaev_pair(&crate::group::symmetric(3));
        assert!(verify_matched_pair(&mp).passed());
        let ab = turaev_pair(&cyclic(4));
        assert!(ab.act1.is_trivial());
        let z2 = zappa_szep(&turaev_pair(&cyclic(2))).unwrap();
        assert_eq!(z2.group.table_rows(), direct_product(&cyclic(2), &cyclic(2)).table_rows());
    }

    #[test]
    fn re_extraction_is_identity() {
        let mp = z2_z3_inversion();
        let zs = zappa_szep(&mp).unwrap();
        let back = from_exact_factorization(&zs.group, &zs.embed_g.image, &zs.embed_gamma.image).unwrap();
        assert_eq!(back.g.table_rows(), mp.g.table_rows());
        assert_eq!(back.gamma.table_rows(), mp.gamma.table_rows());
        assert_eq!(back.act1.table, mp.act1.table);
        assert_eq!(back.act2.table, mp.act2.table);
    }
}
