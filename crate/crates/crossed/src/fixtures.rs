//! Named fixtures shipped under `fixtures/`.

use crate::braided::{center_braiding, turaev_braiding, BraidedMatchedPair};
use crate::category::{vec_gamma, vec_gamma_times, PointedCrossedCategory};
use crate::group::{
    cyclic, dihedral_with_perms, perm_index, subgroup_from_generators, symmetric, symmetric_with_perms, trivial,
    FiniteGroup, GroupHom,
};
use crate::matched::{from_exact_factorization, turaev_pair, MatchedPair};

/// An exact factorization H = G·Γ given by generators of both subgroups.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub h: FiniteGroup,
    pub gens_g: Vec<usize>,
    pub gens_gamma: Vec<usize>,
}

impl Factorization {
    pub fn subgroups(&self) -> (Vec<usize>, Vec<usize>) {
        (subgroup_from_generators(&self.h, &self.gens_g), subgroup_from_generators(&self.h, &self.gens_gamma))
    }

    pub fn matched_pair(&self) -> MatchedPair {
        let (a, b) = self.subgroups();
        from_exact_factorization(&self.h, &a, &b).expect("fixture factorization is exact")
    }
}

pub fn groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("trivial_group", trivial()),
        ("z2", cyclic(2)),
        ("z4", cyclic(4)),
        ("s3", symmetric(3)),
        ("d4", dihedral_with_perms(4).0),
        ("s4", symmetric(4)),
    ]
}

pub fn factorizations() -> Vec<(&'static str, Factorization)> {
    let (s3, p3) = symmetric_with_perms(3);
    let (s4, p4) = symmetric_with_perms(4);
    let (d4, pd) = dihedral_with_perms(4);
    let r = perm_index(&pd, &[1, 2, 3, 0]);
    let s = perm_index(&pd, &[0, 3, 2, 1]);
    let r2 = d4.mul(r, r);
    let rs = d4.mul(r, s);
    vec![
        (
            "s3_factorization",
            Factorization { h: s3, gens_g: vec![perm_index(&p3, &[1, 0, 2])], gens_gamma: vec![perm_index(&p3, &[1, 2, 0])] },
        ),
        (
            "s4_z4_s3",
            Factorization {
                h: s4,
                gens_g: vec![perm_index(&p4, &[1, 2, 3, 0])],
                gens_gamma: vec![perm_index(&p4, &[1, 0, 2, 3]), perm_index(&p4, &[1, 2, 0, 3])],
            },
        ),
        ("d4_refl_rot", Factorization { h: d4.clone(), gens_g: vec![s], gens_gamma: vec![r] }),
        ("d4_klein_refl", Factorization { h: d4, gens_g: vec![r2, s], gens_gamma: vec![rs] }),
    ]
}

/// (Z₂, Z₃) with Z₂ inverting Z₃ and ▷₂ trivial.
pub fn z2z3() -> MatchedPair {
    MatchedPair::new(cyclic(2), cyclic(3), vec![vec![0, 1, 2], vec![0, 2, 1]], vec![vec![0, 1]; 3])
}

pub fn matched_pairs() -> Vec<(&'static str, MatchedPair)> {
    let mut v = vec![
        ("trivial_pair", MatchedPair::trivial(trivial(), trivial())),
        ("z2z3", z2z3()),
        ("z2_z2_trivial", MatchedPair::trivial(cyclic(2), cyclic(2))),
        ("turaev_s3", turaev_pair(&symmetric(3))),
    ];
    for (name, f) in factorizations() {
        v.push((name, f.matched_pair()));
    }
    v
}

pub fn braided_pairs() -> Vec<(&'static str, BraidedMatchedPair)> {
    vec![
        ("turaev_braiding_z2", turaev_braiding(&cyclic(2))),
        ("turaev_braiding_s3", turaev_braiding(&symmetric(3))),
        ("center_braiding_z2z3", center_braiding(&z2z3()).expect("verified")),
    ]
}

fn cat(lambda: FiniteGroup, mp: MatchedPair, grading: Vec<usize>, action: Vec<Vec<usize>>, m: u32) -> PointedCrossedCategory {
    let grading = GroupHom::new(lambda.clone(), mp.gamma.clone(), grading).expect("fixture grading");
    PointedCrossedCategory::with_trivial_scalars(lambda, mp, grading, action, m)
}

/// Λ = Z₄ graded mod 2 over Γ = Z₂, G = Z₂ acting by inversion.
pub fn z4_over_z2() -> PointedCrossedCategory {
    let mp = MatchedPair::trivial(cyclic(2), cyclic(2));
    cat(cyclic(4), mp, vec![0, 1, 0, 1], vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]], 4)
}

/// Λ = Z₂, G = Z₂, Γ trivial, with J^1(1,1) = ζ₄².
pub fn cocycle() -> PointedCrossedCategory {
    let mp = MatchedPair::trivial(cyclic(2), trivial());
    let mut c = cat(cyclic(2), mp, vec![0, 0], vec![vec![0, 1]; 2], 4);
    c.j[(2 + 1) * 2 + 1] = 2;
    c
}

/// Λ trivial over Γ = Z₂: ∂ is not surjective.
pub fn singular() -> PointedCrossedCategory {
    cat(trivial(), MatchedPair::trivial(trivial(), cyclic(2)), vec![0], vec![vec![0]], 2)
}

/// Categories that verify and admit a center.
pub fn categories() -> Vec<(&'static str, PointedCrossedCategory)> {
    let s4 = factorizations().into_iter().find(|(n, _)| *n == "s4_z4_s3").unwrap().1.matched_pair();
    vec![
        ("vec_z2", vec_gamma(&MatchedPair::trivial(trivial(), cyclic(2)), 2)),
        ("vec_z3", vec_gamma(&MatchedPair::trivial(trivial(), cyclic(3)), 3)),
        ("vec_z2z3", vec_gamma(&z2z3(), 6)),
        ("vec_turaev_s3", vec_gamma(&turaev_pair(&symmetric(3)), 2)),
        ("vec_s4", vec_gamma(&s4, 2)),
        ("vec_z2z3_times_z2", vec_gamma_times(&z2z3(), &cyclic(2), 2)),
        ("z4_over_z2", z4_over_z2()),
        ("graded_z4", cat(cyclic(4), MatchedPair::trivial(trivial(), cyclic(2)), vec![0, 1, 0, 1], vec![vec![0, 1, 2, 3]], 4)),
        ("equivariant_z2", cat(trivial(), MatchedPair::trivial(cyclic(2), trivial()), vec![0], vec![vec![0]; 2], 2)),
        ("cocycle", cocycle()),
    ]
}

pub fn category(name: &str) -> Option<PointedCrossedCategory> {
    categories().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}

pub fn matched_pair(name: &str) -> Option<MatchedPair> {
    matched_pairs().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}

/// Every shipped file as (file name, JSON body). Categories and pairs are stored inline.
pub fn files() -> Vec<(String, serde_json::Value)> {
    use crate::io;
    let mut out = Vec::new();
    for (n, g) in groups() {
        out.push((format!("{n}.json"), io::group_to_json(&g)));
    }
    for (n, f) in factorizations() {
        out.push((
            format!("{n}.factorization.json"),
            serde_json::json!({"H": io::group_to_json(&f.h), "gensG": f.gens_g, "gensGamma": f.gens_gamma}),
        ));
    }
    for (n, mp) in matched_pairs() {
        out.push((format!("{n}.json"), io::matched_pair_to_json(&mp)));
    }
    for (n, b) in braided_pairs() {
        out.push((format!("{n}.json"), io::braided_pair_to_json(&b)));
    }
    for (n, c) in categories() {
        out.push((format!("{n}.json"), io::category_to_json(&c)));
    }
    out.push(("singular.json".into(), io::category_to_json(&singular())));
    let z4 = z4_over_z2();
    let st = crate::center::Center::new(&z4).and_then(|c| c.structure()).expect("fixture center");
    out.push(("z4_over_z2.center.json".into(), io::center_structure_to_json(&st)));
    out
}

/// Renders a file body exactly as the writer does.
pub fn render(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
