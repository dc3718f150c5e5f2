//! The (G,Γ)-crossed center of a pointed crossed category: simples, tensor product, the two
//! actions, the swap maps σ, the braiding, and a verifier for the braided structure.
//!
//! A simple is (g, λ, c) where c: ker ∂ → ℤ/M gives the half-braiding λν → ^gν λ.
//! The Γ-action, σ and the braiding are computed when all structure scalars are trivial, or
//! when Γ is trivial and ι ≡ 1. Anything else is reported as unsupported.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::braided::{self, center_braiding as pair_braiding, center_pair, verify_braiding, PairCodec};
use crate::category::{verify_crossed_category, verify_crossed_braiding, PointedCrossedCategory};
use crate::group::{self, direct_product, GroupHom};
use crate::matched::{MatchedError, MatchedPair};
use crate::report::{first_failure, VerificationReport};
use crate::scalar::{add, neg, UnitScalar};
use crate::words::{predicted_coefficient, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CenterError {
    #[error("grading is not surjective: degree {missing} has no simple")]
    NonSingularityViolated { missing: usize },
    #[error("category does not verify: {0}")]
    InvalidCategory(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("wrong specialization: {0}")]
    WrongSpecialization(String),
    #[error("oracle search space {0} exceeds the limit")]
    OracleTooLarge(u128),
    #[error("section is not a section of the grading")]
    BadSection,
    #[error(transparent)]
    Matched(#[from] MatchedError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CenterSimple {
    /// The G-degree.
    pub g: usize,
    pub label: usize,
    /// Exponents of h_ν, indexed by position of ν in ker ∂ (sorted).
    pub chi: Vec<u32>,
}

/// How the scalar structure of the center is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    TrivialScalars,
    GammaTrivial,
}

pub fn regime(cat: &PointedCrossedCategory) -> Result<Regime, CenterError> {
    if cat.has_trivial_scalars() {
        Ok(Regime::TrivialScalars)
    } else if cat.gamma().is_trivial() && cat.iota.iter().all(|&x| x == 0) {
        Ok(Regime::GammaTrivial)
    } else {
        Err(CenterError::Unsupported(
            "the Gamma-action and braiding need trivial structure scalars, or trivial Gamma with trivial iota".into(),
        ))
    }
}

pub fn kernel_of_grading(cat: &PointedCrossedCategory) -> Vec<usize> {
    group::kernel(&cat.grading)
}

fn require_non_singular(cat: &PointedCrossedCategory) -> Result<(), CenterError> {
    let hit: Vec<bool> = {
        let mut v = vec![false; cat.gamma().order()];
        for l in cat.lambda.elements() {
            v[cat.deg(l)] = true;
        }
        v
    };
    match hit.iter().position(|&b| !b) {
        Some(missing) => Err(CenterError::NonSingularityViolated { missing }),
        None => Ok(()),
    }
}

fn require_verified(cat: &PointedCrossedCategory) -> Result<(), CenterError> {
    let r = verify_crossed_category(cat);
    let first = r.failures().next().map(|c| c.name.clone());
    match first {
        Some(name) => Err(CenterError::InvalidCategory(name)),
        None => Ok(()),
    }
}

/// `λνλ⁻¹ = ^gν` for all ν in N.
fn conjugation_ok(cat: &PointedCrossedCategory, n: &[usize], g: usize, l: usize) -> bool {
    n.iter().all(|&nu| cat.lmul(l, nu) == cat.lmul(cat.act(g, nu), l))
}

/// All simples, sorted.
pub fn enumerate_center(cat: &PointedCrossedCategory) -> Result<Vec<CenterSimple>, CenterError> {
    require_non_singular(cat)?;
    require_verified(cat)?;
    let n = kernel_of_grading(cat);
    let mut out = Vec::new();
    for g in cat.g().elements() {
        for l in cat.lambda.elements() {
            if !conjugation_ok(cat, &n, g, l) {
                continue;
            }
            // c(ν₁ν₂) = J^g(ν₁,ν₂) + c(ν₁) + c(ν₂)
            for chi in group::twisted_characters(&cat.lambda, &n, cat.m, |a, b| cat.j_at(g, a, b)) {
                out.push(CenterSimple { g, label: l, chi });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Oracle limit on (M+1)^|N| per (g, λ) cell.
pub const ORACLE_LIMIT: u128 = 5_000_000;

/// Solves the defining equations by exhaustive search over all maps N → μ_M ∪ {0}.
pub fn relative_center_oracle(cat: &PointedCrossedCategory) -> Result<Vec<CenterSimple>, CenterError> {
    require_non_singular(cat)?;
    let n = kernel_of_grading(cat);
    let m = cat.m;
    let space = (m as u128 + 1).checked_pow(n.len() as u32).unwrap_or(u128::MAX);
    if space > ORACLE_LIMIT {
        return Err(CenterError::OracleTooLarge(space));
    }
    let pos = |x: usize| n.iter().position(|&y| y == x);
    let mut out = Vec::new();
    for g in cat.g().elements() {
        for l in cat.lambda.elements() {
            let mut values = vec![UnitScalar::Zero; n.len()];
            for code in 0..space {
                let mut r = code;
                for v in values.iter_mut() {
                    let d = (r % (m as u128 + 1)) as u32;
                    r /= m as u128 + 1;
                    *v = if d == m { UnitScalar::Zero } else { UnitScalar::Root(d) };
                }
                if !values.iter().all(|v| v.is_invertible()) {
                    continue;
                }
                // h_ν lives in Hom(λν, ^gν λ), which is zero unless the labels agree.
                let supported = n.iter().enumerate().all(|(i, &nu)| {
                    cat.lmul(l, nu) == cat.lmul(cat.act(g, nu), l) || values[i] == UnitScalar::Zero
                });
                if !supported {
                    continue;
                }
                let law = n.iter().enumerate().all(|(i, &a)| {
                    n.iter().enumerate().all(|(j, &b)| {
                        let ab = pos(cat.lmul(a, b)).expect("kernel is closed");
                        let rhs = UnitScalar::Root(cat.j_at(g, a, b)).mul(values[i], m).mul(values[j], m);
                        values[ab] == rhs
                    })
                });
                if law {
                    out.push(CenterSimple { g, label: l, chi: values.iter().map(|v| v.exponent().unwrap()).collect() });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

// ---------------------------------------------------------------------------

/// The center with a fixed section ζ and a list of simples to close over.
#[derive(Debug, Clone)]
pub struct Center<'a> {
    pub cat: &'a PointedCrossedCategory,
    pub n: Vec<usize>,
    npos: Vec<Option<usize>>,
    pub simples: Vec<CenterSimple>,
    index: HashMap<CenterSimple, usize>,
    pub zeta: Vec<usize>,
    pub regime: Regime,
    codec: PairCodec,
}

impl<'a> Center<'a> {
    /// Enumerates the simples and uses the least-index section.
    pub fn new(cat: &'a PointedCrossedCategory) -> Result<Self, CenterError> {
        require_non_singular(cat)?;
        let simples = enumerate_center(cat)?;
        let zeta = cat.least_section().ok_or(CenterError::BadSection)?;
        Self::with_simples(cat, simples, zeta)
    }

    pub fn with_section(cat: &'a PointedCrossedCategory, zeta: Vec<usize>) -> Result<Self, CenterError> {
        let simples = enumerate_center(cat)?;
        Self::with_simples(cat, simples, zeta)
    }

    /// Uses the given simples as-is, e.g. a deliberately corrupted list.
    pub fn with_simples(cat: &'a PointedCrossedCategory, simples: Vec<CenterSimple>, zeta: Vec<usize>) -> Result<Self, CenterError> {
        require_non_singular(cat)?;
        let regime = regime(cat)?;
        if zeta.len() != cat.gamma().order()
            || zeta.iter().enumerate().any(|(s, &l)| l >= cat.n_l() || cat.deg(l) != s)
            || zeta[cat.gamma().identity()] != cat.lambda.identity()
        {
            return Err(CenterError::BadSection);
        }
        let n = kernel_of_grading(cat);
        let mut npos = vec![None; cat.n_l()];
        for (i, &x) in n.iter().enumerate() {
            npos[x] = Some(i);
        }
        let index = simples.iter().cloned().enumerate().map(|(i, z)| (z, i)).collect();
        Ok(Center {
            cat,
            n,
            npos,
            simples,
            index,
            zeta,
            regime,
            codec: PairCodec { n_gamma: cat.gamma().order() },
        })
    }

    pub fn index_of(&self, z: &CenterSimple) -> Option<usize> {
        self.index.get(z).copied()
    }

    /// c_z(ν) for ν ∈ N given as a label.
    #[inline]
    pub fn c(&self, z: &CenterSimple, nu: usize) -> u32 {
        z.chi[self.npos[nu].expect("element of the kernel")]
    }

    /// (h, t) ∈ G×Γ.
    pub fn grade(&self, z: &CenterSimple) -> (usize, usize) {
        (z.g, self.cat.deg(z.label))
    }

    pub fn grade_code(&self, z: &CenterSimple) -> usize {
        let (h, t) = self.grade(z);
        self.codec.enc(h, t)
    }

    pub fn unit(&self) -> CenterSimple {
        let cat = self.cat;
        CenterSimple { g: cat.g().identity(), label: cat.lambda.identity(), chi: self.n.iter().map(|&nu| cat.iota_at(nu)).collect() }
    }

    /// Conjugation constraint and twisted multiplicativity.
    pub fn invariant_failure(&self, z: &CenterSimple) -> Option<Value> {
        let cat = self.cat;
        if z.g >= cat.n_g() || z.label >= cat.n_l() || z.chi.len() != self.n.len() || z.chi.iter().any(|&x| x >= cat.m) {
            return Some(json!({"simple": z, "error": "shape"}));
        }
        if let Some(&nu) = self.n.iter().find(|&&nu| cat.lmul(z.label, nu) != cat.lmul(cat.act(z.g, nu), z.label)) {
            return Some(json!({"simple": z, "nu": nu, "error": "conjugation"}));
        }
        for &a in &self.n {
            for &b in &self.n {
                let lhs = self.c(z, cat.lmul(a, b));
                let rhs = add(add(cat.j_at(z.g, a, b), self.c(z, a), cat.m), self.c(z, b), cat.m);
                if lhs != rhs {
                    return Some(json!({"simple": z, "nu1": a, "nu2": b, "error": "multiplicativity"}));
                }
            }
        }
        None
    }

    /// (g₁g₂, λ₁λ₂, ν ↦ c₂(ν) + c₁(^{g₂}ν) + χ_{g₁,g₂}(ν))
    pub fn tensor(&self, z1: &CenterSimple, z2: &CenterSimple) -> CenterSimple {
        let cat = self.cat;
        let m = cat.m;
        let chi = self
            .n
            .iter()
            .map(|&nu| add(add(self.c(z2, nu), self.c(z1, cat.act(z2.g, nu)), m), cat.chi_at(z1.g, z2.g, nu), m))
            .collect();
        CenterSimple { g: cat.g().mul(z1.g, z2.g), label: cat.lmul(z1.label, z2.label), chi }
    }

    /// ^g z, with h^{^gλ}_ν = ^g h^λ_{^{g⁻¹}ν} conjugated by canonical maps.
    pub fn g_action(&self, g: usize, z: &CenterSimple) -> CenterSimple {
        let cat = self.cat;
        let gg = cat.g();
        let m = cat.m;
        let (h, t) = self.grade(z);
        let ginv = gg.inv(g);
        let h_new = gg.mul(gg.mul(cat.mp.a2(t, g), h), ginv);
        let (x, y) = (Term::Hole(1), Term::Hole(2));
        let src = Term::tensor(Term::act(g, x.clone()), y.clone());
        let mid1 = Term::act(g, Term::tensor(x.clone(), Term::act(ginv, y.clone())));
        let mid2 = Term::act(g, Term::tensor(Term::act(h, Term::act(ginv, y.clone())), x.clone()));
        let tgt = Term::tensor(Term::act(h_new, y.clone()), Term::act(g, x.clone()));
        let chi = self
            .n
            .iter()
            .map(|&nu| {
                let objs = [z.label, nu];
                let s1 = predicted_coefficient(&src, &mid1, &objs, cat).expect("parallel words");
                let s2 = predicted_coefficient(&mid2, &tgt, &objs, cat).expect("parallel words");
                add(add(s1, self.c(z, cat.act(ginv, nu)), m), s2, m)
            })
            .collect();
        CenterSimple { g: h_new, label: cat.act(g, z.label), chi }
    }

    /// ^s z: label ^hζ_s·λ·ζ_s⁻¹, G-degree s ▷₂ h, half-braiding ν ↦ c(ζ_s⁻¹νζ_s).
    pub fn gamma_action(&self, s: usize, z: &CenterSimple) -> CenterSimple {
        let cat = self.cat;
        let zs = self.zeta[s];
        let zi = cat.linv(zs);
        let label = cat.lmul(cat.lmul(cat.act(z.g, zs), z.label), zi);
        let chi = self.n.iter().map(|&nu| self.c(z, cat.lmul(cat.lmul(zi, nu), zs))).collect();
        CenterSimple { g: cat.mp.a2(s, z.g), label, chi }
    }

    /// ^{(g,s)} z = ^g(^s z)
    pub fn zs_action(&self, g: usize, s: usize, z: &CenterSimple) -> CenterSimple {
        self.g_action(g, &self.gamma_action(s, z))
    }

    /// J^Γ_s(z₁,z₂): ^{h₂▷₁s}z₁ ⊗ ^s z₂ → ^s(z₁z₂)
    pub fn j_gamma(&self, s: usize, z1: &CenterSimple, z2: &CenterSimple) -> u32 {
        match self.regime {
            Regime::GammaTrivial => 0,
            Regime::TrivialScalars => {
                let cat = self.cat;
                let s2 = cat.mp.a1(z2.g, s);
                let nu = cat.lmul(cat.linv(self.zeta[s2]), cat.act(z2.g, self.zeta[s]));
                self.c(z1, nu)
            }
        }
    }

    /// χ^Γ_{s₁,s₂}(z): ^{s₁}(^{s₂}z) → ^{s₁s₂}z
    pub fn chi_gamma(&self, s1: usize, s2: usize, z: &CenterSimple) -> u32 {
        match self.regime {
            Regime::GammaTrivial => 0,
            Regime::TrivialScalars => {
                let cat = self.cat;
                let gm = cat.gamma();
                let kappa = cat.lmul(cat.linv(self.zeta[gm.mul(s1, s2)]), cat.lmul(self.zeta[s1], self.zeta[s2]));
                neg(self.c(z, kappa), cat.m)
            }
        }
    }

    /// σ_{g,s}(z): ^s(^g z) → ^{(s▷₂g⁻¹)⁻¹}(^{g⁻¹▷₁s} z)
    pub fn sigma(&self, g: usize, s: usize, z: &CenterSimple) -> u32 {
        match self.regime {
            Regime::GammaTrivial => 0,
            Regime::TrivialScalars => {
                let cat = self.cat;
                let b = cat.mp.a1(cat.g().inv(g), s);
                let kappa = cat.lmul(cat.linv(cat.act(g, self.zeta[b])), self.zeta[s]);
                neg(self.c(&self.g_action(g, z), kappa), cat.m)
            }
        }
    }

    pub fn j_g(&self, g: usize, z1: &CenterSimple, z2: &CenterSimple) -> u32 {
        self.cat.j_at(g, z1.label, z2.label)
    }

    pub fn chi_g(&self, g: usize, h: usize, z: &CenterSimple) -> u32 {
        self.cat.chi_at(g, h, z.label)
    }

    /// b(z₁,z₂): ^{t₂}z₁ ⊗ z₂ → ^{h₁}z₂ ⊗ z₁, the half-braiding of z₁ at ζ_{t₂}⁻¹λ₂.
    pub fn braiding(&self, z1: &CenterSimple, z2: &CenterSimple) -> (CenterSimple, UnitScalar) {
        let cat = self.cat;
        let t2 = cat.deg(z2.label);
        let nu = cat.lmul(cat.linv(self.zeta[t2]), z2.label);
        let target = self.tensor(&self.g_action(z1.g, z2), z1);
        (target, UnitScalar::Root(self.c(z1, nu)))
    }

    /// The inverse composite, built from h⁻¹ at the same point.
    pub fn braiding_inverse(&self, z1: &CenterSimple, z2: &CenterSimple) -> UnitScalar {
        let cat = self.cat;
        let t2 = cat.deg(z2.label);
        let nu = cat.lmul(cat.linv(self.zeta[t2]), z2.label);
        UnitScalar::Root(neg(self.c(z1, nu), cat.m))
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterStructure {
    pub simples: Vec<CenterSimple>,
    /// `[i][j]` = index of z_i ⊗ z_j
    pub tensor_table: Vec<Vec<usize>>,
    /// `[g][i]`
    pub g_action_table: Vec<Vec<usize>>,
    /// `[s][i]`
    pub gamma_action_table: Vec<Vec<usize>>,
    /// `[i][j]` = (target index, coefficient)
    pub braiding_table: Vec<Vec<(usize, UnitScalar)>>,
    pub section: Vec<usize>,
}

/// Closes all structure maps over the simple list; the first escape is returned as a witness.
fn build_structure(c: &Center) -> Result<CenterStructure, (String, Value)> {
    let k = c.simples.len();
    let look = |name: &str, z: CenterSimple, from: Value| c.index_of(&z).ok_or_else(|| (name.to_string(), json!({"from": from, "result": z})));
    let sim = &c.simples;
    let tensor_table = (0..k)
        .map(|i| (0..k).map(|j| look("closure.tensor", c.tensor(&sim[i], &sim[j]), json!([i, j]))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let g_action_table = c
        .cat
        .g()
        .elements()
        .map(|g| (0..k).map(|i| look("closure.g_action", c.g_action(g, &sim[i]), json!({"g": g, "z": i}))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let gamma_action_table = c
        .cat
        .gamma()
        .elements()
        .map(|s| (0..k).map(|i| look("closure.gamma_action", c.gamma_action(s, &sim[i]), json!({"s": s, "z": i}))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let braiding_table = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let (t, coef) = c.braiding(&sim[i], &sim[j]);
                    Ok((look("closure.braiding", t, json!([i, j]))?, coef))
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(CenterStructure {
        simples: c.simples.clone(),
        tensor_table,
        g_action_table,
        gamma_action_table,
        braiding_table,
        section: c.zeta.clone(),
    })
}

impl<'a> Center<'a> {
    pub fn structure(&self) -> Result<CenterStructure, CenterError> {
        build_structure(self).map_err(|(name, w)| CenterError::Unsupported(format!("{name}: {w}")))
    }

    /// The crossed structures on the center as pointed categories over the simples.
    pub fn categories(&self, st: &CenterStructure) -> Result<CenterCategories, CenterError> {
        build_categories(self, st).map_err(|(name, w)| CenterError::Unsupported(format!("{name}: {w}")))
    }
}

/// Group of simples under ⊗, the G×Γ grading, and the three crossed structures on it.
pub struct CenterCategories {
    pub zcat: PointedCrossedCategory,
    pub g_structure: PointedCrossedCategory,
    pub gamma_structure: PointedCrossedCategory,
}

fn g_structure_pair(mp: &MatchedPair) -> MatchedPair {
    let prod = direct_product(&mp.g, &mp.gamma);
    let c = PairCodec { n_gamma: mp.gamma.order() };
    let act1 = mp
        .g
        .elements()
        .map(|g| prod.elements().map(|x| { let (a, b) = braided::g_act_grade(mp, g, c.dec(x)); c.enc(a, b) }).collect())
        .collect();
    let act2 = prod.elements().map(|x| mp.g.elements().map(|g| mp.a2(c.dec(x).1, g)).collect()).collect();
    MatchedPair::new(mp.g.clone(), prod, act1, act2)
}

fn gamma_structure_pair(mp: &MatchedPair) -> MatchedPair {
    let prod = direct_product(&mp.g, &mp.gamma);
    let c = PairCodec { n_gamma: mp.gamma.order() };
    let act1 = mp
        .gamma
        .elements()
        .map(|s| prod.elements().map(|x| { let (a, b) = braided::gamma_act_grade(mp, s, c.dec(x)); c.enc(a, b) }).collect())
        .collect();
    let act2 = prod.elements().map(|x| mp.gamma.elements().map(|s| mp.a1(c.dec(x).0, s)).collect()).collect();
    MatchedPair::new(mp.gamma.clone(), prod, act1, act2)
}

fn build_categories(c: &Center, st: &CenterStructure) -> Result<CenterCategories, (String, Value)> {
    let cat = c.cat;
    let k = st.simples.len();
    let unit = c.index_of(&c.unit()).ok_or_else(|| ("tensor.group".to_string(), json!({"error": "unit is not enumerated"})))?;
    let lam = group::validate_named("Z(C)", st.tensor_table.clone(), unit)
        .map_err(|e| ("tensor.group".to_string(), e.witness()))?;
    let cp = center_pair(&cat.mp).map_err(|e| ("center_pair".to_string(), json!({"error": e.to_string()})))?;
    let prod = cp.gamma.clone();
    let grading = GroupHom::new(lam.clone(), prod.clone(), st.simples.iter().map(|z| c.grade_code(z)).collect())
        .map_err(|e| ("grading.multiplicative".to_string(), e.witness()))?;
    let (ng, ngm) = (cat.n_g(), cat.gamma().order());
    let m = cat.m;
    let zz = |i: usize| &st.simples[i];

    // G-structure.
    let g_mp = g_structure_pair(&cat.mp);
    let mut g_cat = PointedCrossedCategory::with_trivial_scalars(lam.clone(), g_mp, grading.clone(), st.g_action_table.clone(), m);
    for g in 0..ng {
        g_cat.phi[g] = cat.phi_at(g);
        for i in 0..k {
            for j in 0..k {
                g_cat.j[(g * k + i) * k + j] = c.j_g(g, zz(i), zz(j));
            }
        }
        for h in 0..ng {
            for i in 0..k {
                g_cat.chi[(g * ng + h) * k + i] = c.chi_g(g, h, zz(i));
            }
        }
    }
    for i in 0..k {
        g_cat.iota[i] = cat.iota_at(zz(i).label);
    }

    // Γ-structure.
    let gm_mp = gamma_structure_pair(&cat.mp);
    let mut gm_cat = PointedCrossedCategory::with_trivial_scalars(lam.clone(), gm_mp, grading.clone(), st.gamma_action_table.clone(), m);
    for s in 0..ngm {
        for i in 0..k {
            for j in 0..k {
                gm_cat.j[(s * k + i) * k + j] = c.j_gamma(s, zz(i), zz(j));
            }
        }
        for s2 in 0..ngm {
            for i in 0..k {
                gm_cat.chi[(s * ngm + s2) * k + i] = c.chi_gamma(s, s2, zz(i));
            }
        }
    }

    // G⋈Γ-structure: γ(g,s) = γ^G(g)γ^Γ(s).
    let nz = cp.g.order();
    let codec = PairCodec { n_gamma: ngm };
    let action: Vec<Vec<usize>> = (0..nz)
        .map(|x| {
            let (g, s) = codec.dec(x);
            (0..k).map(|i| st.g_action_table[g][st.gamma_action_table[s][i]]).collect()
        })
        .collect();
    let mut zcat = PointedCrossedCategory::with_trivial_scalars(lam, cp.clone(), grading, action.clone(), m);
    let gg = cat.g();
    let gm = cat.gamma();
    for x in 0..nz {
        let (g, s) = codec.dec(x);
        zcat.phi[x] = cat.phi_at(g);
        for i in 0..k {
            for j in 0..k {
                // J^{(g,s)}_{λ,μ} = ^g J^Γ_s(λ,μ) ∘ J^G_g(^{∂μ▷₂^Γ s}λ, ^sμ)
                let s2 = cat.mp.a1(zz(j).g, s);
                let a = st.gamma_action_table[s2][i];
                let b = st.gamma_action_table[s][j];
                zcat.j[(x * k + i) * k + j] = add(c.j_gamma(s, zz(i), zz(j)), c.j_g(g, zz(a), zz(b)), m);
            }
        }
        for y in 0..nz {
            let (g2, s2) = codec.dec(y);
            let a = gg.inv(cat.mp.a2(s, gg.inv(g2)));
            let b = cat.mp.a1(gg.inv(g2), s);
            let bs2 = gm.mul(b, s2);
            for i in 0..k {
                // (χ^G_{g,a} ∗ χ^Γ_{b,s'}) ∘ (id ∗ σ_{g',s} ∗ id)
                let w = st.gamma_action_table[s2][i];
                let v = add(
                    add(c.sigma(g2, s, zz(w)), c.chi_gamma(b, s2, zz(i)), m),
                    c.chi_g(g, a, zz(st.gamma_action_table[bs2][i])),
                    m,
                );
                zcat.chi[(x * nz + y) * k + i] = v;
            }
        }
    }
    for i in 0..k {
        zcat.iota[i] = cat.iota_at(zz(i).label);
    }
    Ok(CenterCategories { zcat, g_structure: g_cat, gamma_structure: gm_cat })
}

fn sigma_checks(c: &Center, st: &CenterStructure, r: &mut VerificationReport) {
    let cat = c.cat;
    let (gg, gm, m) = (cat.g(), cat.gamma(), cat.m);
    let k = st.simples.len();
    let (ng, ngm) = (cat.n_g(), gm.order());
    let zz = |i: usize| &st.simples[i];
    let ga = |g: usize, i: usize| st.g_action_table[g][i];
    let sa = |s: usize, i: usize| st.gamma_action_table[s][i];
    let ab = |g: usize, s: usize| (gg.inv(cat.mp.a2(s, gg.inv(g))), cat.mp.a1(gg.inv(g), s));
    r.check(
        "sigma.typing",
        first_failure(&[ng, ngm, k], |i| {
            let (g, s, z) = (i[0], i[1], i[2]);
            let (a, b) = ab(g, s);
            (sa(s, ga(g, z)) != ga(a, sa(b, z))).then(|| json!({"g": g, "s": s, "z": z}))
        }),
    );
    r.check(
        "sigma.naturality_scalar",
        first_failure(&[ng, ngm, k], |i| {
            let v = c.sigma(i[0], i[1], zz(i[2]));
            (v >= m).then(|| json!({"g": i[0], "s": i[1], "z": i[2]}))
        }),
    );
    // First condition, the Yang-Baxter relation.
    r.check(
        "sigma.yang_baxter",
        first_failure(&[ng, ngm, k, k], |i| {
            let (g, s, l, mu) = (i[0], i[1], i[2], i[3]);
            let (kk, u) = c.grade(zz(mu));
            let (a, b) = ab(g, s);
            let ug = cat.mp.a2(u, g);
            let lm = st.tensor_table[l][mu];
            let lhs = add(
                add(c.sigma(g, s, zz(lm)), c.j_g(g, zz(l), zz(mu)), m),
                c.j_gamma(s, zz(ga(ug, l)), zz(ga(g, mu))),
                m,
            );
            let kb = cat.mp.a1(kk, b);
            let g2 = gg.mul(gg.mul(ug, kk), gg.inv(g));
            let s2 = cat.mp.a1(g2, s);
            let rhs = add(
                add(c.j_gamma(b, zz(l), zz(mu)), c.j_g(a, zz(sa(kb, l)), zz(sa(b, mu))), m),
                add(c.sigma(ug, s2, zz(l)), c.sigma(g, s, zz(mu)), m),
                m,
            );
            (lhs != rhs).then(|| json!({"g": g, "s": s, "lambda": l, "mu": mu, "lhs": lhs, "rhs": rhs}))
        }),
    );
    let unit = c.unit();
    r.check(
        "sigma.unit",
        first_failure(&[ng, ngm], |i| {
            let (g, s) = (i[0], i[1]);
            let (a, _) = ab(g, s);
            let lhs = add(c.sigma(g, s, &unit), cat.phi_at(g), m);
            let rhs = cat.phi_at(a);
            (lhs != rhs).then(|| json!({"g": g, "s": s, "lhs": lhs, "rhs": rhs}))
        }),
    );
    r.check(
        "sigma.gamma_chi",
        first_failure(&[ng, ngm, ngm, k], |i| {
            let (g, s, s2, l) = (i[0], i[1], i[2], i[3]);
            let (a2, b2) = ab(g, s2);
            let lhs = add(c.sigma(g, gm.mul(s, s2), zz(l)), c.chi_gamma(s, s2, zz(ga(g, l))), m);
            let first = cat.mp.a1(gg.inv(a2), s);
            let rhs = add(
                add(c.chi_gamma(first, b2, zz(l)), c.sigma(a2, s, zz(sa(b2, l))), m),
                c.sigma(g, s2, zz(l)),
                m,
            );
            (lhs != rhs).then(|| json!({"g": g, "s": s, "t": s2, "lambda": l, "lhs": lhs, "rhs": rhs}))
        }),
    );
    r.check(
        "sigma.g_chi",
        first_failure(&[ng, ng, ngm, k], |i| {
            let (g, g2, s, l) = (i[0], i[1], i[2], i[3]);
            let (a, b) = ab(g, s);
            let (a2, b2) = ab(g2, b);
            let lhs = add(c.sigma(gg.mul(g, g2), s, zz(l)), c.chi_g(g, g2, zz(l)), m);
            let rhs = add(
                add(c.chi_g(a, a2, zz(sa(b2, l))), c.sigma(g2, b, zz(l)), m),
                c.sigma(g, s, zz(ga(g2, l))),
                m,
            );
            (lhs != rhs).then(|| json!({"g": g, "h": g2, "s": s, "lambda": l, "lhs": lhs, "rhs": rhs}))
        }),
    );
    r.check(
        "sigma.gamma_unit",
        first_failure(&[ng, k], |i| {
            let v = c.sigma(i[0], gm.identity(), zz(i[1]));
            (v != 0).then(|| json!({"g": i[0], "lambda": i[1], "value": v}))
        }),
    );
    r.check(
        "sigma.g_unit",
        first_failure(&[ngm, k], |i| {
            let (s, l) = (i[0], i[1]);
            let lhs = add(c.sigma(gg.identity(), s, zz(l)), cat.iota_at(zz(l).label), m);
            let rhs = cat.iota_at(zz(sa(s, l)).label);
            (lhs != rhs).then(|| json!({"s": s, "lambda": l, "lhs": lhs, "rhs": rhs}))
        }),
    );
}

/// Verifies the braided structure on the enumerated center with the least-index section.
pub fn verify_center_braided(cat: &PointedCrossedCategory) -> Result<VerificationReport, CenterError> {
    require_non_singular(cat)?;
    let zeta = cat.least_section().ok_or(CenterError::BadSection)?;
    let center = Center::with_section(cat, zeta)?;
    Ok(verify_center(&center))
}

/// Runs every check group on a center with its given simples and section.
pub fn verify_center(c: &Center) -> VerificationReport {
    let cat = c.cat;
    let mut r = VerificationReport::new();
    let k = c.simples.len();
    let zz = |i: usize| &c.simples[i];

    let distinct = {
        let mut v = c.simples.clone();
        v.sort();
        v.windows(2).find(|w| w[0] == w[1]).map(|w| json!({"duplicate": w[0]}))
    };
    r.check("simples.distinct", distinct);
    r.check("simples.invariants", c.simples.iter().find_map(|z| c.invariant_failure(z)));
    // Every simple is invertible and the unit is listed.
    r.check("simples.unit", c.index_of(&c.unit()).is_none().then(|| json!({"unit": c.unit()})));
    let st = match build_structure(c) {
        Ok(st) => {
            for name in ["closure.tensor", "closure.g_action", "closure.gamma_action", "closure.braiding"] {
                r.check(name, None);
            }
            st
        }
        Err((name, w)) => {
            r.check(name, Some(w));
            return r;
        }
    };
    if !r.passed() {
        return r;
    }
    let codec = PairCodec { n_gamma: cat.gamma().order() };
    let prod = direct_product(cat.g(), cat.gamma());
    r.check(
        "grading.multiplicative",
        first_failure(&[k, k], |i| {
            let lhs = c.grade_code(zz(st.tensor_table[i[0]][i[1]]));
            let rhs = prod.mul(c.grade_code(zz(i[0])), c.grade_code(zz(i[1])));
            (lhs != rhs).then(|| json!({"z1": i[0], "z2": i[1], "lhs": lhs, "rhs": rhs}))
        }),
    );
    let cp = match center_pair(&cat.mp) {
        Ok(cp) => cp,
        Err(e) => {
            r.check("center_pair", Some(json!({"error": e.to_string()})));
            return r;
        }
    };
    r.check(
        "grade.g_action",
        first_failure(&[cat.n_g(), k], |i| {
            let (g, z) = (i[0], i[1]);
            let lhs = c.grade(zz(st.g_action_table[g][z]));
            let rhs = braided::g_act_grade(&cat.mp, g, c.grade(zz(z)));
            (lhs != rhs).then(|| json!({"g": g, "z": z}))
        }),
    );
    r.check(
        "grade.gamma_action",
        first_failure(&[cat.gamma().order(), k], |i| {
            let (s, z) = (i[0], i[1]);
            let lhs = c.grade(zz(st.gamma_action_table[s][z]));
            let rhs = braided::gamma_act_grade(&cat.mp, s, c.grade(zz(z)));
            (lhs != rhs).then(|| json!({"s": s, "z": z}))
        }),
    );
    r.check(
        "grade.center_pair",
        first_failure(&[cp.g.order(), k], |i| {
            let (x, z) = (i[0], i[1]);
            let (g, s) = codec.dec(x);
            let lhs = c.grade_code(zz(st.g_action_table[g][st.gamma_action_table[s][z]]));
            let rhs = cp.a1(x, c.grade_code(zz(z)));
            (lhs != rhs).then(|| json!({"gs": x, "z": z, "lhs": lhs, "rhs": rhs}))
        }),
    );
    if c.regime == Regime::TrivialScalars {
        // The pointed idempotent d⁻¹·h^λ on ζ_s^∨ζ_s is h^λ at the unit.
        r.check(
            "gamma.idempotent",
            c.simples.iter().enumerate().find(|(_, z)| c.c(z, cat.lambda.identity()) != 0).map(|(i, _)| json!({"z": i})),
        );
    }
    let cats = match build_categories(c, &st) {
        Ok(x) => x,
        Err((name, w)) => {
            r.check(name, Some(w));
            return r;
        }
    };
    r.check("tensor.group", None);
    r.extend_prefixed("g_structure", verify_crossed_category(&cats.g_structure));
    r.extend_prefixed("gamma_structure", verify_crossed_category(&cats.gamma_structure));
    sigma_checks(c, &st, &mut r);
    r.extend_prefixed("zcat", verify_crossed_category(&cats.zcat));
    match pair_braiding(&cat.mp) {
        Ok(bmp) => {
            r.extend_prefixed("braided_pair", verify_braiding(&bmp));
            let b: Vec<u32> = (0..k * k).map(|x| st.braiding_table[x / k][x % k].1.exponent().unwrap_or(u32::MAX)).collect();
            r.check(
                "braiding.invertible",
                first_failure(&[k, k], |i| (!st.braiding_table[i[0]][i[1]].1.is_invertible()).then(|| json!({"z1": i[0], "z2": i[1]}))),
            );
            r.check(
                "braiding.inverse",
                first_failure(&[k, k], |i| {
                    let f = st.braiding_table[i[0]][i[1]].1;
                    let g = c.braiding_inverse(zz(i[0]), zz(i[1]));
                    (g.mul(f, cat.m) != UnitScalar::ONE).then(|| json!({"z1": i[0], "z2": i[1]}))
                }),
            );
            r.check(
                "braiding.target",
                first_failure(&[k, k], |i| {
                    let (z1, z2) = (i[0], i[1]);
                    let psi = bmp.psi.apply(c.grade_code(zz(z1)));
                    let expect = st.tensor_table[cats.zcat.act(psi, z2)][z1];
                    (st.braiding_table[z1][z2].0 != expect).then(|| json!({"z1": z1, "z2": z2}))
                }),
            );
            r.extend_prefixed("braiding", verify_crossed_braiding(&cats.zcat, &bmp, &b));
        }
        Err(e) => r.check("braided_pair", Some(json!({"error": e.to_string()}))),
    }
    r.check("duals.category", verify_crossed_category(cat).get("duals").and_then(|c| c.witness.clone()));
    r.stats = Some(json!({"simples": k, "regime": format!("{:?}", c.regime)}));
    r
}

/// Grade histogram keyed "h:t".
pub fn grade_histogram(c: &Center) -> BTreeMap<String, usize> {
    let mut h = BTreeMap::new();
    for z in &c.simples {
        let (a, b) = c.grade(z);
        *h.entry(format!("{a}:{b}")).or_default() += 1;
    }
    h
}

/// Center report: simples, grade histogram, and the braided-structure checks.
pub fn center_report(cat: &PointedCrossedCategory) -> Result<Value, CenterError> {
    require_non_singular(cat)?;
    let zeta = cat.least_section().ok_or(CenterError::BadSection)?;
    let c = Center::with_section(cat, zeta)?;
    let r = verify_center(&c);
    let mut v = r.to_json();
    if let Value::Object(map) = &mut v {
        map.insert("simples".into(), json!(c.simples.iter().map(|z| json!({"g": z.g, "label": z.label, "chi": z.chi})).collect::<Vec<_>>()));
        map.insert("gradeHistogram".into(), json!(grade_histogram(&c)));
    }
    Ok(v)
}

/// Which of the two degenerate patterns a braided pair on (G, G) follows.
fn turaev_pattern(b: &braided::BraidedMatchedPair) -> Option<&'static str> {
    let n = b.mp.g.order();
    let id: Vec<usize> = (0..n).collect();
    let triv = vec![b.mp.g.identity(); n];
    if b.phi.image == triv && b.psi.image == id {
        Some("turaev")
    } else if b.phi.image == id && b.psi.image == triv {
        Some("turaev_mirror")
    } else {
        None
    }
}

/// The Γ-graded center, for trivial G.
pub fn graded_center(cat: &PointedCrossedCategory) -> Result<(CenterStructure, &'static str), CenterError> {
    if !cat.g().is_trivial() {
        return Err(CenterError::WrongSpecialization("G must be trivial".into()));
    }
    degenerate_center(cat, |c, st| st.g_action_table.iter().all(|row| row.iter().enumerate().all(|(i, &j)| i == j)) && c.simples.iter().all(|z| z.g == 0))
}

/// The G-equivariant center, for trivial Γ.
pub fn equivariant_center(cat: &PointedCrossedCategory) -> Result<(CenterStructure, &'static str), CenterError> {
    if !cat.gamma().is_trivial() {
        return Err(CenterError::WrongSpecialization("Gamma must be trivial".into()));
    }
    degenerate_center(cat, |c, _| c.simples.iter().all(|z| c.cat.deg(z.label) == c.cat.gamma().identity()))
}

fn degenerate_center(
    cat: &PointedCrossedCategory,
    shape: impl Fn(&Center, &CenterStructure) -> bool,
) -> Result<(CenterStructure, &'static str), CenterError> {
    let c = Center::new(cat)?;
    let st = c.structure()?;
    if !shape(&c, &st) {
        return Err(CenterError::WrongSpecialization("structure does not degenerate".into()));
    }
    let b = pair_braiding(&cat.mp)?;
    // Both groups of the induced pair collapse to the surviving one; compare on that group.
    let survivor = if cat.g().is_trivial() { cat.gamma().clone() } else { cat.g().clone() };
    let iso_g = group::find_isomorphism(&b.mp.g, &survivor).is_some();
    let adjoint = b.mp.act1.table.iter().enumerate().all(|(x, row)| {
        row.iter().enumerate().all(|(y, &v)| v == b.mp.g.conj(x, y))
    }) && b.mp.act2.is_trivial();
    let pattern = if iso_g && adjoint && b.mp.g.table_rows() == b.mp.gamma.table_rows() {
        turaev_pattern(&b)
    } else {
        None
    };
    let pattern = pattern.ok_or_else(|| CenterError::WrongSpecialization("braided pair is not of Turaev type".into()))?;
    Ok((st, pattern))
}

/// Scalars of a cell for external inspection: (σ, J^Γ, χ^Γ) never zero on enumerated simples.
pub fn all_coefficients_invertible(c: &Center) -> bool {
    let cat = c.cat;
    let m = cat.m;
    c.simples.iter().all(|z| {
        cat.g().elements().all(|g| cat.gamma().elements().all(|s| c.sigma(g, s, z) < m))
            && c.simples.iter().all(|w| c.braiding(z, w).1.is_invertible())
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matched::MatchedPair;
    use proptest::prelude::*;

    fn count(name: &str) -> usize {
        enumerate_center(&fixtures::category(name).unwrap()).unwrap().len()
    }

    #[test]
    fn counts() {
        assert_eq!(count("vec_z2"), 2);
        assert_eq!(count("vec_z3"), 3);
        assert_eq!(count("z4_over_z2"), 16);
        assert_eq!(count("equivariant_z2"), 2);
        assert_eq!(count("graded_z4"), 8);
    }

    #[test]
    fn oracle_agrees_on_all_fixtures() {
        for (name, cat) in fixtures::categories() {
            assert_eq!(enumerate_center(&cat).unwrap(), relative_center_oracle(&cat).unwrap(), "{name}");
        }
    }

    #[test]
    fn oracle_drops_incompatible_labels() {
        // Λ = Z₄ graded mod 2 with G = Z₂ acting trivially on Λ but N = {0,2}: everything is
        // compatible; with Λ = S₃ × Z₂ over S₃ and G = S₃ acting by conjugation on the first
        // factor only, labels outside the centralizer are dropped for g ≠ e.
        let cat = fixtures::category("vec_turaev_s3").unwrap();
        let z = relative_center_oracle(&cat).unwrap();
        assert_eq!(z.len(), 36);
        assert_eq!(z, enumerate_center(&cat).unwrap());
    }

    #[test]
    fn no_compatible_labels_for_nontrivial_g() {
        // G = Z₂ swaps the two factors of Λ = Z₂ × Z₂, all of Λ is trivially graded; λνλ⁻¹ = ν
        // so only ν fixed by the swap survive, and no λ works for g = 1.
        let lam = group::direct_product(&group::cyclic(2), &group::cyclic(2));
        let mp = MatchedPair::trivial(group::cyclic(2), group::trivial());
        let grading = GroupHom::trivial(lam.clone(), group::trivial());
        let cat = PointedCrossedCategory::with_trivial_scalars(lam, mp, grading, vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]], 2);
        let z = relative_center_oracle(&cat).unwrap();
        assert!(z.iter().all(|s| s.g == 0));
        assert_eq!(z.len(), 16);
        assert_eq!(z, enumerate_center(&cat).unwrap());
    }

    #[test]
    fn singular_and_unsupported() {
        assert_eq!(enumerate_center(&fixtures::singular()), Err(CenterError::NonSingularityViolated { missing: 1 }));
        assert!(matches!(verify_center_braided(&fixtures::singular()), Err(CenterError::NonSingularityViolated { .. })));
        let mut cat = fixtures::z4_over_z2();
        cat.chi[(2 + 1) * 4] = 1;
        assert!(matches!(Center::new(&cat), Err(CenterError::Unsupported(_)) | Err(CenterError::InvalidCategory(_))));
    }

    fn z4() -> PointedCrossedCategory {
        fixtures::z4_over_z2()
    }

    #[test]
    fn z4_tensor_and_actions() {
        let cat = z4();
        let c = Center::new(&cat).unwrap();
        let chars = [vec![0, 0], vec![0, 2]];
        for a in &chars {
            for b in &chars {
                let z1 = CenterSimple { g: 1, label: 1, chi: a.clone() };
                let z2 = CenterSimple { g: 1, label: 1, chi: b.clone() };
                // N = {0, 2} and −ν = ν, so ν ↦ χ(−ν)χ′(ν) is the pointwise sum.
                let want = CenterSimple { g: 0, label: 2, chi: vec![0, (a[1] + b[1]) % 4] };
                assert_eq!(c.tensor(&z1, &z2), want);
                // Inversion: (h, 1, χ) ↦ (h, 3, χ).
                assert_eq!(c.g_action(1, &z1), CenterSimple { g: 1, label: 3, chi: a.clone() });
                // ζ₁ = 1 and Λ abelian: ^hζ·λ·ζ⁻¹ = 3·1·3 = 3 for h = 1.
                let y = c.gamma_action(1, &z1);
                assert_eq!((y.g, y.label), (1, 3));
                assert_eq!(c.grade(&y), braided::gamma_act_grade(&cat.mp, 1, c.grade(&z1)));
            }
        }
        let unit = c.unit();
        for z in &c.simples {
            assert_eq!(&c.tensor(&unit, z), z);
            assert_eq!(&c.g_action(0, z), z);
            assert_eq!(&c.gamma_action(0, z), z);
        }
    }

    #[test]
    fn braiding_inverse_and_trivial_coefficient() {
        for (name, cat) in fixtures::categories() {
            let c = Center::new(&cat).unwrap();
            for z1 in &c.simples {
                for z2 in &c.simples {
                    let (_, f) = c.braiding(z1, z2);
                    assert_eq!(f.mul(c.braiding_inverse(z1, z2), cat.m), UnitScalar::ONE, "{name}");
                    let trivial = |z: &CenterSimple| c.grade(z) == (0, 0) && z.chi.iter().all(|&x| x == 0);
                    if trivial(z1) && trivial(z2) {
                        assert_eq!(f, UnitScalar::ONE);
                    }
                }
            }
        }
    }

    #[test]
    fn all_fixtures_verify() {
        for (name, cat) in fixtures::categories() {
            let r = verify_center_braided(&cat).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures().next());
            for group in ["sigma.yang_baxter", "braiding.axiom1", "braiding.axiom2", "braiding.axiom3", "zcat.axiom2.associativity"] {
                assert!(r.get(group).is_some(), "{name} lacks {group}");
            }
            let c = Center::new(&cat).unwrap();
            assert!(all_coefficients_invertible(&c));
        }
    }

    #[test]
    fn z4_has_nontrivial_coefficients() {
        let cat = z4();
        let c = Center::new(&cat).unwrap();
        let b = c.simples.iter().flat_map(|z| c.simples.iter().map(move |w| (z, w)));
        assert!(b.clone().any(|(z, w)| c.braiding(z, w).1 != UnitScalar::ONE));
        assert!(c.simples.iter().any(|z| c.sigma(1, 1, z) != 0));
        assert!(c.simples.iter().any(|z| c.chi_gamma(1, 1, z) != 0));
    }

    fn rebuild(cat: &PointedCrossedCategory) -> (CenterStructure, CenterCategories) {
        let c = Center::new(cat).unwrap();
        let st = c.structure().unwrap();
        let cats = c.categories(&st).unwrap();
        (st, cats)
    }

    #[test]
    fn single_sigma_terms_are_needed() {
        let cat = z4();
        let c = Center::new(&cat).unwrap();
        let (st, cats) = rebuild(&cat);
        let k = st.simples.len();
        let nz = cats.zcat.n_g();
        let codec = PairCodec { n_gamma: 2 };
        let mut tried = 0;
        for x in 0..nz {
            for y in 0..nz {
                let ((_, s), (g2, s2)) = (codec.dec(x), codec.dec(y));
                for i in 0..k {
                    let sg = c.sigma(g2, s, &st.simples[st.gamma_action_table[s2][i]]);
                    if sg == 0 {
                        continue;
                    }
                    let mut z = cats.zcat.clone();
                    let e = &mut z.chi[(x * nz + y) * k + i];
                    *e = (*e + cat.m - sg) % cat.m;
                    assert!(!verify_crossed_category(&z).passed(), "entry {x} {y} {i}");
                    tried += 1;
                }
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn single_j_gamma_entries_are_needed() {
        let (_, cats) = rebuild(&z4());
        let nonzero: Vec<usize> = (0..cats.gamma_structure.j.len()).filter(|&i| cats.gamma_structure.j[i] != 0).collect();
        assert!(!nonzero.is_empty());
        for i in nonzero {
            let mut g = cats.gamma_structure.clone();
            g.j[i] = 0;
            assert!(!verify_crossed_category(&g).passed(), "entry {i}");
        }
    }

    #[test]
    fn literal_psi_breaks_braiding_target() {
        let cat = fixtures::category("vec_turaev_s3").unwrap();
        let c = Center::new(&cat).unwrap();
        let (st, cats) = rebuild(&cat);
        let k = st.simples.len();
        let b: Vec<u32> = (0..k * k).map(|x| st.braiding_table[x / k][x % k].1.exponent().unwrap()).collect();
        let good = pair_braiding(&cat.mp).unwrap();
        assert!(verify_crossed_braiding(&cats.zcat, &good, &b).passed());
        let bad = braided::center_braiding_identity_psi(&cat.mp).unwrap();
        let r = verify_crossed_braiding(&cats.zcat, &bad, &b);
        assert!(!r.get("labels").unwrap().pass);
        let _ = c;
    }

    #[test]
    fn flipping_a_half_braiding_is_detected() {
        for name in ["z4_over_z2", "vec_z2z3_times_z2", "cocycle"] {
            let cat = fixtures::category(name).unwrap();
            let base = enumerate_center(&cat).unwrap();
            let zeta = cat.least_section().unwrap();
            for i in 0..base.len() {
                for pos in 0..base[i].chi.len() {
                    let mut simples = base.clone();
                    simples[i].chi[pos] = (simples[i].chi[pos] + 1) % cat.m;
                    let c = Center::with_simples(&cat, simples, zeta.clone()).unwrap();
                    assert!(!verify_center(&c).passed(), "{name} simple {i} entry {pos}");
                }
            }
        }
    }

    #[test]
    fn greatest_index_section() {
        for (name, cat) in fixtures::categories() {
            let mut zeta = vec![0; cat.gamma().order()];
            for l in cat.lambda.elements() {
                zeta[cat.deg(l)] = l;
            }
            zeta[cat.gamma().identity()] = cat.lambda.identity();
            let c = Center::with_section(&cat, zeta).unwrap();
            let r = verify_center(&c);
            assert!(r.passed(), "{name}: {:?}", r.failures().next());
            let d = Center::new(&cat).unwrap();
            for s in cat.gamma().elements() {
                let mut a: Vec<_> = c.simples.iter().map(|z| c.grade(&c.gamma_action(s, z))).collect();
                let mut b: Vec<_> = d.simples.iter().map(|z| d.grade(&d.gamma_action(s, z))).collect();
                a.sort();
                b.sort();
                assert_eq!(a, b, "{name}");
            }
        }
    }

    #[test]
    fn specializations() {
        let (st, p) = graded_center(&fixtures::category("graded_z4").unwrap()).unwrap();
        assert_eq!((st.simples.len(), p), (8, "turaev_mirror"));
        let (st, _) = graded_center(&fixtures::category("vec_z3").unwrap()).unwrap();
        assert_eq!(st.simples.len(), 3);
        assert!(st.simples.iter().all(|z| z.chi.is_empty() || z.chi == vec![0]));
        let (st, p) = equivariant_center(&fixtures::category("equivariant_z2").unwrap()).unwrap();
        assert_eq!((st.simples.len(), p), (2, "turaev"));
        let (_, p) = equivariant_center(&fixtures::cocycle()).unwrap();
        assert_eq!(p, "turaev");
        assert!(matches!(graded_center(&z4()), Err(CenterError::WrongSpecialization(_))));
        assert!(matches!(equivariant_center(&z4()), Err(CenterError::WrongSpecialization(_))));
    }

    #[test]
    fn report_shape() {
        let v = center_report(&z4()).unwrap();
        assert_eq!(v["simples"].as_array().unwrap().len(), 16);
        let h = v["gradeHistogram"].as_object().unwrap();
        assert_eq!(h.values().map(|x| x.as_u64().unwrap()).sum::<u64>(), 16);
        assert_eq!(h["1:1"], 4);
        assert_eq!(v["pass"], true);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Any section gives a passing report, on fixtures with nontrivial fibres.
        #[test]
        fn any_section_verifies(pick in proptest::collection::vec(0usize..64, 3)) {
            for name in ["z4_over_z2", "vec_z2z3_times_z2"] {
                let cat = fixtures::category(name).unwrap();
                let ng = cat.gamma().order();
                let mut zeta = vec![cat.lambda.identity(); ng];
                for s in 1..ng {
                    let fibre: Vec<usize> = cat.lambda.elements().filter(|&l| cat.deg(l) == s).collect();
                    zeta[s] = fibre[pick[s % pick.len()] % fibre.len()];
                }
                let c = Center::with_section(&cat, zeta).unwrap();
                let r = verify_center(&c);
                prop_assert!(r.passed(), "{}: {:?}", name, r.failures().next());
            }
        }
    }
}
