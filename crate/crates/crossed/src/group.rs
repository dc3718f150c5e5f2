//! Finite groups as Cayley tables over dense indices, with homomorphisms, actions,
//! subgroups, characters and an isomorphism search.

use std::collections::{BTreeSet, VecDeque};

use serde_json::{json, Value};
use thiserror::Error;

use crate::scalar;

/// Largest order accepted by [`validate_group`].
pub const MAX_ORDER: usize = 64 * 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is empty")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry ({row},{col}) = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("identity index {0} is out of range")]
    IdentityOutOfRange(usize),
    #[error("element {identity} is not a two-sided identity (witness {witness})")]
    NoIdentity { identity: usize, witness: usize },
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0},{1},{2})")]
    AssocViolation(usize, usize, usize),
    #[error("order {0} exceeds the supported envelope")]
    TooLarge(usize),
    #[error("element names: expected {expected}, got {got}")]
    BadNames { expected: usize, got: usize },
}

impl GroupError {
    pub fn witness(&self) -> Value {
        match self {
            GroupError::AssocViolation(a, b, c) => json!({"a": a, "b": b, "c": c}),
            GroupError::NoInverse(a) => json!({"a": a}),
            GroupError::NoIdentity { identity, witness } => json!({"identity": identity, "a": witness}),
            other => json!({"error": other.to_string()}),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

/// Checks the group laws on a raw table. Errors carry the first witness found.
pub fn validate_group(table: Vec<Vec<usize>>, identity: usize) -> Result<FiniteGroup, GroupError> {
    validate_named("", table, identity)
}

pub fn validate_named(name: &str, table: Vec<Vec<usize>>, identity: usize) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupError::Empty);
    }
    if n > MAX_ORDER {
        return Err(GroupError::TooLarge(n));
    }
    for (row, r) in table.iter().enumerate() {
        if r.len() != n {
            return Err(GroupError::NotSquare { row, len: r.len(), order: n });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(GroupError::EntryOutOfRange { row, col, value });
        }
    }
    if identity >= n {
        return Err(GroupError::IdentityOutOfRange(identity));
    }
    if let Some(a) = (0..n).find(|&a| table[identity][a] != a || table[a][identity] != a) {
        return Err(GroupError::NoIdentity { identity, witness: a });
    }
    let mut inverses = vec![0; n];
    for a in 0..n {
        match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
            Some(b) => inverses[a] = b,
            None => return Err(GroupError::NoInverse(a)),
        }
    }
    let flat: Vec<usize> = table.into_iter().flatten().collect();
    let at = |a: usize, b: usize| flat[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(GroupError::AssocViolation(a, b, c));
                }
            }
        }
    }
    Ok(FiniteGroup {
        name: name.to_string(),
        order: n,
        table: flat,
        identity,
        inverses,
        names: None,
    })
}

impl FiniteGroup {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_element_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.order {
            return Err(GroupError::BadNames { expected: self.order, got: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element: a custom name, or `e` / `g<i>`.
    pub fn element_name(&self, a: usize) -> String {
        match &self.names {
            Some(v) => v[a].clone(),
            None if a == self.identity => "e".to_string(),
            None => format!("g{a}"),
        }
    }

    /// Resolves an element name; accepts custom names, `e`, and `g<i>`.
    pub fn element_by_name(&self, s: &str) -> Option<usize> {
        if let Some(v) = &self.names {
            if let Some(i) = v.iter().position(|x| x == s) {
                return Some(i);
            }
        }
        if s == "e" {
            return Some(self.identity);
        }
        s.strip_prefix('g')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i < self.order)
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Exhaustive re-check of the three group laws; `None` when all hold.
    pub fn law_failure(&self) -> Option<GroupError> {
        validate_group(self.table_rows(), self.identity).err()
    }

    /// Product of a subset `s` of elements with itself closed under multiplication.
    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        let set: BTreeSet<usize> = s.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| set.contains(&self.inv(a)) && set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// The subgroup on a closed subset, re-indexed by position in `subset` (sorted order).
    pub fn restrict(&self, subset: &[usize]) -> FiniteGroup {
        let pos = |x: usize| subset.iter().position(|&y| y == x).expect("closed subset");
        let table: Vec<Vec<usize>> = subset
            .iter()
            .map(|&a| subset.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        validate_named(&format!("{}|sub", self.name), table, pos(self.identity)).expect("subset is a subgroup")
    }

    pub fn identity_hom(&self) -> GroupHom {
        GroupHom {
            source: self.clone(),
            target: self.clone(),
            image: (0..self.order).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Canonical constructors. Identity is index 0 in all of them.

pub fn trivial() -> FiniteGroup {
    validate_named("1", vec![vec![0]], 0).unwrap()
}

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    validate_named(&format!("Z{n}"), table, 0).unwrap()
}

/// The group generated by permutations of `0..degree`, elements sorted lexicographically.
pub fn from_permutations(name: &str, gens: &[Vec<usize>]) -> (FiniteGroup, Vec<Vec<usize>>) {
    let degree = gens.first().map(|p| p.len()).unwrap_or(0);
    let id: Vec<usize> = (0..degree).collect();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { (0..degree).map(|i| p[q[i]]).collect() };
    let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
    elems.insert(id.clone());
    let mut queue = VecDeque::from([id.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if elems.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let elems: Vec<Vec<usize>> = elems.into_iter().collect();
    let index = |p: &Vec<usize>| elems.binary_search(p).unwrap();
    // Product a·b means "apply b, then a".
    let table = elems
        .iter()
        .map(|a| elems.iter().map(|b| index(&compose(a, b))).collect())
        .collect();
    (validate_named(name, table, 0).unwrap(), elems)
}

pub fn symmetric(n: usize) -> FiniteGroup {
    symmetric_with_perms(n).0
}

pub fn symmetric_with_perms(n: usize) -> (FiniteGroup, Vec<Vec<usize>>) {
    if n <= 1 {
        let (g, p) = (trivial(), vec![(0..n).collect()]);
        return (g.with_name(format!("S{n}")), p);
    }
    let mut cycle: Vec<usize> = (1..n).collect();
    cycle.push(0);
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    from_permutations(&format!("S{n}"), &[cycle, swap])
}

/// Symmetries of the regular n-gon, order 2n.
pub fn dihedral(n: usize) -> FiniteGroup {
    dihedral_with_perms(n).0
}

pub fn dihedral_with_perms(n: usize) -> (FiniteGroup, Vec<Vec<usize>>) {
    assert!(n >= 3);
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    from_permutations(&format!("D{n}"), &[rot, refl])
}

pub fn perm_index(perms: &[Vec<usize>], p: &[usize]) -> usize {
    perms.iter().position(|q| q == p).expect("permutation in group")
}

/// Componentwise product; (a,b) is encoded as a·|H| + b.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.order(), h.order());
    let table = (0..m * n)
        .map(|x| {
            (0..m * n)
                .map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
                .collect()
        })
        .collect();
    validate_named(&format!("{}x{}", g.name(), h.name()), table, g.identity() * n + h.identity()).unwrap()
}

pub fn projections(g: &FiniteGroup, h: &FiniteGroup) -> (GroupHom, GroupHom) {
    let p = direct_product(g, h);
    let n = h.order();
    let first = GroupHom::new(p.clone(), g.clone(), (0..p.order()).map(|x| x / n).collect()).unwrap();
    let second = GroupHom::new(p.clone(), h.clone(), (0..p.order()).map(|x| x % n).collect()).unwrap();
    (first, second)
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("image has {got} entries, source has order {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("image entry {index} = {value} out of range")]
    OutOfRange { index: usize, value: usize },
    #[error("identity maps to {0}, not the target identity")]
    Identity(usize),
    #[error("not multiplicative at ({0},{1})")]
    NotMultiplicative(usize, usize),
}

impl HomError {
    pub fn witness(&self) -> Value {
        match self {
            HomError::NotMultiplicative(a, b) => json!({"a": a, "b": b}),
            other => json!({"error": other.to_string()}),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, image: Vec<usize>) -> Result<Self, HomError> {
        let hom = GroupHom { source, target, image };
        match hom.failure() {
            Some(e) => Err(hom_err(e)),
            None => Ok(hom),
        }
    }

    pub fn trivial(source: FiniteGroup, target: FiniteGroup) -> Self {
        let e = target.identity();
        let n = source.order();
        GroupHom { source, target, image: vec![e; n] }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.image[a]
    }

    /// The first violated hom law, if any.
    pub fn failure(&self) -> Option<HomError> {
        check_hom(&self.source, &self.target, &self.image).err()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order()
            && self.image.iter().copied().collect::<BTreeSet<_>>().len() == self.image.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image.iter().copied().collect::<BTreeSet<_>>().len() == self.target.order()
    }
}

fn hom_err(e: HomError) -> HomError {
    e
}

pub fn check_hom(source: &FiniteGroup, target: &FiniteGroup, image: &[usize]) -> Result<(), HomError> {
    if image.len() != source.order() {
        return Err(HomError::WrongLength { expected: source.order(), got: image.len() });
    }
    if let Some((index, &value)) = image.iter().enumerate().find(|(_, &v)| v >= target.order()) {
        return Err(HomError::OutOfRange { index, value });
    }
    if image[source.identity()] != target.identity() {
        return Err(HomError::Identity(image[source.identity()]));
    }
    for a in source.elements() {
        for b in source.elements() {
            if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                return Err(HomError::NotMultiplicative(a, b));
            }
        }
    }
    Ok(())
}

pub fn kernel(f: &GroupHom) -> Vec<usize> {
    let e = f.target.identity();
    f.source.elements().filter(|&a| f.image[a] == e).collect()
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// An action of a group on the set `0..set_size`, indexed `[actor][point]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupActionOnSet {
    pub actor: FiniteGroup,
    pub set_size: usize,
    pub table: Vec<Vec<usize>>,
    pub side: Side,
}

impl GroupActionOnSet {
    pub fn trivial(actor: FiniteGroup, set_size: usize) -> Self {
        let table = vec![(0..set_size).collect(); actor.order()];
        GroupActionOnSet { actor, set_size, table, side: Side::Left }
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g][x]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(|r| r.iter().enumerate().all(|(i, &x)| i == x))
    }

    pub fn shape_failure(&self) -> Option<Value> {
        if self.table.len() != self.actor.order() {
            return Some(json!({"rows": self.table.len(), "expected": self.actor.order()}));
        }
        for (g, r) in self.table.iter().enumerate() {
            if r.len() != self.set_size {
                return Some(json!({"row": g, "len": r.len(), "expected": self.set_size}));
            }
            if let Some((x, &v)) = r.iter().enumerate().find(|(_, &v)| v >= self.set_size) {
                return Some(json!({"g": g, "x": x, "value": v}));
            }
        }
        None
    }

    pub fn identity_failure(&self) -> Option<Value> {
        let e = self.actor.identity();
        (0..self.set_size)
            .find(|&x| self.act(e, x) != x)
            .map(|x| json!({"x": x, "got": self.act(e, x)}))
    }

    pub fn compat_failure(&self) -> Option<Value> {
        let g = &self.actor;
        crate::report::first_failure(&[g.order(), g.order(), self.set_size], |i| {
            let (a, b, x) = (i[0], i[1], i[2]);
            let lhs = self.act(a, self.act(b, x));
            let prod = match self.side {
                Side::Left => g.mul(a, b),
                Side::Right => g.mul(b, a),
            };
            let rhs = self.act(prod, x);
            (lhs != rhs).then(|| json!({"g": a, "h": b, "x": x, "lhs": lhs, "rhs": rhs}))
        })
    }

    /// The same action read on the other side through `g ↦ g⁻¹`.
    pub fn flip_side(&self) -> Self {
        let table = self.actor.elements().map(|g| self.table[self.actor.inv(g)].clone()).collect();
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        GroupActionOnSet { actor: self.actor.clone(), set_size: self.set_size, table, side }
    }
}

/// A left action of `actor` on `carrier` by automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAutAction {
    pub actor: FiniteGroup,
    pub carrier: FiniteGroup,
    pub table: Vec<Vec<usize>>,
}

impl GroupAutAction {
    pub fn as_set_action(&self) -> GroupActionOnSet {
        GroupActionOnSet {
            actor: self.actor.clone(),
            set_size: self.carrier.order(),
            table: self.table.clone(),
            side: Side::Left,
        }
    }

    pub fn failure(&self) -> Option<Value> {
        let set = self.as_set_action();
        if let Some(w) = set.shape_failure().or_else(|| set.identity_failure()).or_else(|| set.compat_failure()) {
            return Some(w);
        }
        let c = &self.carrier;
        crate::report::first_failure(&[self.actor.order(), c.order(), c.order()], |i| {
            let (g, x, y) = (i[0], i[1], i[2]);
            let lhs = self.table[g][c.mul(x, y)];
            let rhs = c.mul(self.table[g][x], self.table[g][y]);
            (lhs != rhs).then(|| json!({"g": g, "x": x, "y": y}))
        })
    }
}

// ---------------------------------------------------------------------------

pub fn subgroup_from_generators(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    (0..g.order()).filter(|&x| seen[x]).collect()
}

/// A small generating set of the subgroup on `subset`, chosen greedily in index order.
pub fn greedy_generators(g: &FiniteGroup, subset: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![g.identity()];
    for &x in subset {
        if !span.contains(&x) {
            gens.push(x);
            span = subgroup_from_generators(g, &gens);
        }
    }
    gens
}

pub fn commutator_subgroup(g: &FiniteGroup, subset: &[usize]) -> Vec<usize> {
    let mut comms = BTreeSet::new();
    for &a in subset {
        for &b in subset {
            comms.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
        }
    }
    subgroup_from_generators(g, &comms.into_iter().collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("modulus {m} too small: found {found} characters, abelianization has order {expected}")]
    ModulusTooSmall { m: u32, found: usize, expected: usize },
}

/// All homomorphisms from the subgroup `n` of `parent` into μ_M, as exponent vectors indexed
/// by position in `n` (sorted).
pub fn enumerate_characters(parent: &FiniteGroup, n: &[usize], m: u32) -> Result<Vec<Vec<u32>>, CharacterError> {
    if !parent.is_subgroup(n) {
        return Err(CharacterError::NotSubgroup);
    }
    let chars = twisted_characters(parent, n, m, |_, _| 0);
    let expected = n.len() / commutator_subgroup(parent, n).len();
    if chars.len() != expected {
        return Err(CharacterError::ModulusTooSmall { m, found: chars.len(), expected });
    }
    Ok(chars)
}

/// All maps c: N → ℤ/M with c(ab) = twist(a,b) + c(a) + c(b), found by backtracking over
/// greedy generators. `n` must be sorted and closed; twist takes parent indices.
pub fn twisted_characters<F>(parent: &FiniteGroup, n: &[usize], m: u32, twist: F) -> Vec<Vec<u32>>
where
    F: Fn(usize, usize) -> u32,
{
    let gens = greedy_generators(parent, n);
    let pos = |x: usize| n.binary_search(&x).expect("element of N");
    let mut out = Vec::new();
    let mut gen_vals = vec![0u32; gens.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(usize, usize) -> u32>(
        k: usize,
        parent: &FiniteGroup,
        n: &[usize],
        m: u32,
        gens: &[usize],
        gen_vals: &mut Vec<u32>,
        twist: &F,
        pos: &dyn Fn(usize) -> usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        // Propagate the values of the first k generators along right multiplication.
        let mut val: Vec<Option<u32>> = vec![None; n.len()];
        let e = parent.identity();
        val[pos(e)] = Some(scalar::neg(twist(e, e), m));
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            let vx = val[pos(x)].unwrap();
            for (j, &g) in gens[..k].iter().enumerate() {
                let y = parent.mul(x, g);
                let vy = scalar::add(scalar::add(twist(x, g), vx, m), gen_vals[j], m);
                match val[pos(y)] {
                    None => {
                        val[pos(y)] = Some(vy);
                        queue.push_back(y);
                    }
                    Some(v) if v != vy => return,
                    Some(_) => {}
                }
            }
        }
        for (j, &g) in gens[..k].iter().enumerate() {
            if val[pos(g)] != Some(gen_vals[j]) {
                return;
            }
        }
        if k == gens.len() {
            let c: Vec<u32> = val.into_iter().map(|v| v.expect("generated")).collect();
            for (i, &a) in n.iter().enumerate() {
                for (j, &b) in n.iter().enumerate() {
                    let lhs = c[pos(parent.mul(a, b))];
                    let rhs = scalar::add(scalar::add(twist(a, b), c[i], m), c[j], m);
                    if lhs != rhs {
                        return;
                    }
                }
            }
            out.push(c);
            return;
        }
        for v in 0..m {
            gen_vals[k] = v;
            rec(k + 1, parent, n, m, gens, gen_vals, twist, pos, out);
        }
    }
    rec(0, parent, n, m, &gens, &mut gen_vals, &twist, &pos, &mut out);
    out.sort();
    out
}

// ---------------------------------------------------------------------------

/// A bijective homomorphism `g → h`, or `None` when the groups are not isomorphic.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupHom> {
    if g.order() != h.order() {
        return None;
    }
    let mut og: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    let mut oh: Vec<usize> = h.elements().map(|a| h.element_order(a)).collect();
    let orders_h = oh.clone();
    og.sort();
    oh.sort();
    if og != oh {
        return None;
    }
    let all: Vec<usize> = g.elements().collect();
    let gens = greedy_generators(g, &all);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| h.elements().filter(|&t| orders_h[t] == g.element_order(s)).collect())
        .collect();
    let mut choice = vec![0usize; gens.len()];
    fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; g.order()];
        map[g.identity()] = h.identity();
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (j, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let fy = h.mul(map[x], imgs[j]);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }
    fn rec(
        k: usize,
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        choice: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if k == gens.len() {
            let map = extend(g, h, gens, choice)?;
            let distinct: BTreeSet<usize> = map.iter().copied().collect();
            if distinct.len() != map.len() || check_hom(g, h, &map).is_err() {
                return None;
            }
            return Some(map);
        }
        for &t in &candidates[k] {
            choice[k] = t;
            // Early pruning on the partial generating set.
            if extend(g, h, &gens[..=k], &choice[..=k]).is_none() {
                continue;
            }
            if let Some(m) = rec(k + 1, g, h, gens, candidates, choice) {
                return Some(m);
            }
        }
        None
    }
    let image = rec(0, g, h, &gens, &candidates, &mut choice)?;
    Some(GroupHom { source: g.clone(), target: h.clone(), image })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: compose permutations of {0,1,2} by brute force and tabulate.
    fn s3_oracle_table() -> Vec<Vec<usize>> {
        let mut perms = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if a != b && b != c && a != c {
                        perms.push([a, b, c]);
                    }
                }
            }
        }
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect()
    }

    #[test]
    fn s3_table_validates() {
        let g = validate_group(s3_oracle_table(), 0).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.table_rows(), symmetric(3).table_rows());
    }

    #[test]
    fn trivial_table_validates() {
        let g = validate_group(vec![vec![0]], 0).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn swapped_entry_gives_assoc_violation() {
        let mut t = s3_oracle_table();
        // Swap two non-identity values in row 1; identity and inverses stay intact.
        let row = 1;
        let (c1, c2) = {
            let cols: Vec<usize> = (1..6).filter(|&c| t[row][c] != 0 && t[c][row] != 0).collect();
            (cols[0], cols[1])
        };
        t[row].swap(c1, c2);
        match validate_group(t.clone(), 0) {
            Err(GroupError::AssocViolation(a, b, c)) => {
                let at = |x: usize, y: usize| t[x][y];
                assert_ne!(at(at(a, b), c), at(a, at(b, c)));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn direct_products() {
        let z6 = direct_product(&cyclic(2), &cyclic(3));
        assert!(find_isomorphism(&z6, &cyclic(6)).is_some());
        let s3 = symmetric(3);
        let p = direct_product(&s3, &trivial());
        assert_eq!(p.table_rows(), s3.table_rows());
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert!(v4.elements().all(|a| v4.mul(a, a) == v4.identity()));
        let (p1, p2) = projections(&s3, &cyclic(2));
        assert!(p1.failure().is_none() && p2.failure().is_none());
        assert_eq!(kernel(&p1).len(), 2);
    }

    #[test]
    fn subgroups() {
        let (s3, perms) = symmetric_with_perms(3);
        let t12 = perm_index(&perms, &[1, 0, 2]);
        let c3 = perm_index(&perms, &[1, 2, 0]);
        assert_eq!(subgroup_from_generators(&s3, &[t12]).len(), 2);
        assert_eq!(subgroup_from_generators(&s3, &[]), vec![s3.identity()]);
        assert_eq!(subgroup_from_generators(&s3, &[c3]).len(), 3);
    }

    #[test]
    fn kernels() {
        let z4 = cyclic(4);
        assert_eq!(kernel(&z4.identity_hom()), vec![0]);
        let red = GroupHom::new(z4.clone(), cyclic(2), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(kernel(&red), vec![0, 2]);
        let s3 = symmetric(3);
        assert_eq!(kernel(&GroupHom::trivial(s3.clone(), trivial())).len(), 6);
    }

    /// Oracle: brute force over every map N → ℤ/M.
    fn brute_characters(parent: &FiniteGroup, n: &[usize], m: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let total = (m as usize).pow(n.len() as u32);
        for code in 0..total {
            let mut c = vec![0u32; n.len()];
            let mut r = code;
            for v in c.iter_mut() {
                *v = (r % m as usize) as u32;
                r /= m as usize;
            }
            let pos = |x: usize| n.iter().position(|&y| y == x).unwrap();
            let ok = n.iter().enumerate().all(|(i, &a)| {
                n.iter().enumerate().all(|(j, &b)| c[pos(parent.mul(a, b))] == (c[i] + c[j]) % m)
            });
            if ok {
                out.push(c);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn characters_match_brute_force() {
        let z2 = cyclic(2);
        assert_eq!(enumerate_characters(&z2, &[0, 1], 4).unwrap(), vec![vec![0, 0], vec![0, 2]]);
        assert_eq!(enumerate_characters(&trivial(), &[0], 5).unwrap().len(), 1);
        let s3 = symmetric(3);
        let all: Vec<usize> = s3.elements().collect();
        let chars = enumerate_characters(&s3, &all, 6).unwrap();
        assert_eq!(chars.len(), 2);
        assert_eq!(chars, brute_characters(&s3, &all, 6));
        let z4 = cyclic(4);
        assert_eq!(enumerate_characters(&z4, &[0, 1, 2, 3], 4).unwrap(), brute_characters(&z4, &[0, 1, 2, 3], 4));
        assert!(matches!(
            enumerate_characters(&z4, &[0, 1, 2, 3], 2),
            Err(CharacterError::ModulusTooSmall { .. })
        ));
    }

    #[test]
    fn isomorphisms() {
        assert!(find_isomorphism(&cyclic(4), &direct_product(&cyclic(2), &cyclic(2))).is_none());
        let s3 = symmetric(3);
        let f = find_isomorphism(&s3, &s3).unwrap();
        assert!(f.is_bijective() && f.failure().is_none());
        let d4 = dihedral(4);
        let q = direct_product(&cyclic(4), &cyclic(2));
        assert!(find_isomorphism(&d4, &q).is_none());
        assert_eq!(d4.order(), 8);
    }

    #[test]
    fn element_names_resolve() {
        let g = cyclic(3);
        assert_eq!(g.element_by_name("e"), Some(0));
        assert_eq!(g.element_by_name("g2"), Some(2));
        assert_eq!(g.element_by_name("g3"), None);
        assert_eq!(g.element_name(0), "e");
    }
}
