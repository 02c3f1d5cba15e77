//! Linear and semilinear maps of GF(2^u)^2 acting as coordinate
//! permutations, translations of the extended codes, and orbits on cosets.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::codes::{extend_code, LinearCode};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, GFuElem, QuadPair};
use crate::regularity::{enumerate_cosets, CosetRecord, CosetTable};

/// The matrix [[a, a1], [b, b1]] acting on column vectors (γ1, γ2).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: GFuElem,
    pub a1: GFuElem,
    pub b: GFuElem,
    pub b1: GFuElem,
}

impl Mat2 {
    pub fn new(a: u16, a1: u16, b: u16, b1: u16) -> Self {
        Mat2 {
            a: GFuElem(a),
            a1: GFuElem(a1),
            b: GFuElem(b),
            b1: GFuElem(b1),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn det(&self, ctx: &FieldContext) -> GFuElem {
        ctx.mul_u(self.a, self.b1) + ctx.mul_u(self.a1, self.b)
    }

    pub fn apply(&self, ctx: &FieldContext, p: QuadPair) -> QuadPair {
        QuadPair::new(
            ctx.mul_u(self.a, p.g1) + ctx.mul_u(self.a1, p.g2),
            ctx.mul_u(self.b, p.g1) + ctx.mul_u(self.b1, p.g2),
        )
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, ctx: &FieldContext, o: &Mat2) -> Mat2 {
        let m = |x, y| ctx.mul_u(x, y);
        Mat2 {
            a: m(self.a, o.a) + m(self.a1, o.b),
            a1: m(self.a, o.a1) + m(self.a1, o.b1),
            b: m(self.b, o.a) + m(self.b1, o.b),
            b1: m(self.b, o.a1) + m(self.b1, o.b1),
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{:#x},{:#x}],[{:#x},{:#x}]]",
            self.a.0, self.a1.0, self.b.0, self.b1.0
        )
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// γ ↦ Φ(γ^(2^frob)): a linear map when `frob == 0`, semilinear otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub mat: Mat2,
    pub frob: usize,
}

impl GroupElement {
    pub fn linear(mat: Mat2) -> Self {
        GroupElement { mat, frob: 0 }
    }

    pub fn to_permutation(&self, ctx: &FieldContext) -> Result<PositionPermutation> {
        let lin = matrix_to_permutation(&self.mat, ctx)?;
        if self.frob == 0 {
            Ok(lin)
        } else {
            Ok(lin.compose(&frobenius_permutation(ctx, self.frob)))
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.frob == 0 {
            write!(f, "{}", self.mat)
        } else {
            write!(f, "{}*frob^{}", self.mat, self.frob)
        }
    }
}

/// `map[i]` is the image of coordinate `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PositionPermutation {
    map: Vec<usize>,
}

impl PositionPermutation {
    pub fn identity(len: usize) -> Self {
        PositionPermutation {
            map: (0..len).collect(),
        }
    }

    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &x in &map {
            if x >= map.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Internal("map is not a bijection".into()));
            }
        }
        Ok(PositionPermutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &PositionPermutation) -> PositionPermutation {
        PositionPermutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn apply(&self, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(v.len());
        for i in v.iter_ones() {
            out.set(self.map[i], true);
        }
        out
    }

    /// Fixes coordinate 0 and shifts the rest by one, for extended codes.
    pub fn lift(&self) -> PositionPermutation {
        let mut map = Vec::with_capacity(self.map.len() + 1);
        map.push(0);
        map.extend(self.map.iter().map(|&x| x + 1));
        PositionPermutation { map }
    }
}

/// The coordinate permutation induced by Φ on the nonzero pairs.
pub fn matrix_to_permutation(phi: &Mat2, ctx: &FieldContext) -> Result<PositionPermutation> {
    if phi.det(ctx).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let map = (0..ctx.n())
        .map(|p| {
            ctx.pair_position(phi.apply(ctx, ctx.position_pair(p)))
                .expect("nonsingular image of a nonzero pair is nonzero")
        })
        .collect();
    Ok(PositionPermutation { map })
}

/// α^p ↦ α^(2^k p).
pub fn frobenius_permutation(ctx: &FieldContext, k: usize) -> PositionPermutation {
    let n = ctx.n();
    let mult = (1usize << (k % ctx.m())) % n;
    PositionPermutation {
        map: (0..n).map(|p| p * mult % n).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    GL2,
    SL2,
}

/// Generators of GL₂(2^u) or SL₂(2^u): a diagonal torus element, the
/// elementary upper unipotent, and the coordinate swap.
pub fn group_generators(kind: GroupKind, ctx: &FieldContext) -> Vec<Mat2> {
    let w = ctx.zeta_pow(1);
    let torus = match kind {
        GroupKind::GL2 => Mat2 {
            a: w,
            a1: GFuElem(0),
            b: GFuElem(0),
            b1: GFuElem(1),
        },
        GroupKind::SL2 => Mat2 {
            a: w,
            a1: GFuElem(0),
            b: GFuElem(0),
            b1: ctx.inv_u(w).expect("ζ is nonzero"),
        },
    };
    let mut gens = vec![Mat2::new(1, 1, 0, 1), Mat2::new(0, 1, 1, 0)];
    if torus != Mat2::identity() {
        gens.insert(0, torus);
    }
    gens
}

/// All products of the generators; used to check group orders for small u.
pub fn matrix_closure(gens: &[Mat2], ctx: &FieldContext, limit: usize) -> Result<HashSet<Mat2>> {
    let mut seen = HashSet::new();
    seen.insert(Mat2::identity());
    let mut queue = VecDeque::from([Mat2::identity()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.mul(ctx, &x);
            if seen.insert(y) {
                if seen.len() > limit {
                    return Err(Error::TooLarge {
                        what: "matrix group",
                        size: seen.len(),
                        limit,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

/// Syndrome of π(leader).
pub fn act_on_coset(perm: &PositionPermutation, record: &CosetRecord, code: &LinearCode) -> Result<u64> {
    code.syndrome(&perm.apply(&record.leader))
}

/// The linear map on syndromes induced by a permutation that stabilizes the
/// code: the image of column j is column π(j).
struct SyndromeAction {
    unit_images: Vec<u64>,
}

impl SyndromeAction {
    fn apply(&self, s: u64) -> u64 {
        let mut out = 0;
        let mut rest = s;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            out ^= self.unit_images[j];
            rest &= rest - 1;
        }
        out
    }
}

/// Builds the syndrome action, or returns `None` when `col_j ↦ col_π(j)`
/// does not extend to a linear map, i.e. π does not stabilize the code.
fn syndrome_action(code: &LinearCode, perm: &PositionPermutation) -> Option<SyndromeAction> {
    let cols = code.column_syndromes();
    let r = code.redundancy();
    // Reduced basis of columns: (vector, combination of chosen columns).
    let mut basis: Vec<(u64, u64)> = Vec::with_capacity(r);
    let mut chosen: Vec<usize> = Vec::with_capacity(r);
    let reduce = |basis: &[(u64, u64)], mut v: u64| {
        let mut combo = 0u64;
        for &(b, c) in basis {
            let top = 63 - b.leading_zeros();
            if v >> top & 1 == 1 {
                v ^= b;
                combo ^= c;
            }
        }
        (v, combo)
    };
    for (j, &c) in cols.iter().enumerate() {
        if chosen.len() == r {
            break;
        }
        let (v, combo) = reduce(&basis, c);
        if v != 0 {
            let k = chosen.len();
            chosen.push(j);
            basis.push((v, combo ^ (1 << k)));
            basis.sort_by_key(|x| std::cmp::Reverse(x.0));
        }
    }
    if chosen.len() != r {
        return None;
    }
    let image_of_combo = |combo: u64| {
        let mut out = 0;
        for (k, &j) in chosen.iter().enumerate() {
            if combo >> k & 1 == 1 {
                out ^= cols[perm.image(j)];
            }
        }
        out
    };
    let unit_images: Vec<u64> = (0..r)
        .map(|j| {
            let (v, combo) = reduce(&basis, 1 << j);
            debug_assert_eq!(v, 0);
            image_of_combo(combo)
        })
        .collect();
    let act = SyndromeAction { unit_images };
    cols.iter()
        .enumerate()
        .all(|(j, &c)| act.apply(c) == cols[perm.image(j)])
        .then_some(act)
}

/// Whether π maps the code onto itself.
pub fn stabilizes(code: &LinearCode, perm: &PositionPermutation) -> bool {
    perm.len() == code.length() && syndrome_action(code, perm).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitInfo {
    pub weight: usize,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub class_of: Vec<u32>,
    pub orbit_count: usize,
    /// Minimum coset weight per orbit, in orbit id order.
    pub orbit_weights: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
    /// Every orbit consists of cosets of one weight.
    pub weights_consistent: bool,
}

impl OrbitPartition {
    pub fn orbits(&self) -> Vec<OrbitInfo> {
        self.orbit_weights
            .iter()
            .zip(&self.orbit_sizes)
            .map(|(&weight, &size)| OrbitInfo { weight, size })
            .collect()
    }
}

fn witness_outside(code: &LinearCode, perm: &PositionPermutation) -> usize {
    code.generator_basis()
        .iter()
        .position(|w| !code.is_member(&perm.apply(w)).unwrap_or(false))
        .unwrap_or(0)
}

/// Orbits of the group generated by `gens` on the syndromes of `code`.
pub fn orbits_on_cosets(
    gens: &[PositionPermutation],
    code: &LinearCode,
    table: &CosetTable,
) -> Result<OrbitPartition> {
    let mut actions = Vec::with_capacity(gens.len());
    for (g, perm) in gens.iter().enumerate() {
        if perm.len() != code.length() {
            return Err(Error::LengthMismatch {
                expected: code.length(),
                got: perm.len(),
            });
        }
        match syndrome_action(code, perm) {
            Some(a) => actions.push(a),
            None => {
                return Err(Error::NotAnAutomorphism {
                    generator: g,
                    word: witness_outside(code, perm),
                })
            }
        }
    }
    let size = table.len();
    let mut class_of = vec![u32::MAX; size];
    let mut orbit_weights = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut consistent = true;
    let mut queue = Vec::new();
    for start in 0..size {
        if class_of[start] != u32::MAX {
            continue;
        }
        let id = orbit_weights.len() as u32;
        class_of[start] = id;
        queue.push(start as u64);
        let w0 = table.weight_of(start as u64);
        let (mut min_w, mut count) = (w0, 0);
        while let Some(s) = queue.pop() {
            count += 1;
            let w = table.weight_of(s);
            consistent &= w == w0;
            min_w = min_w.min(w);
            for a in &actions {
                let t = a.apply(s) as usize;
                if class_of[t] == u32::MAX {
                    class_of[t] = id;
                    queue.push(t as u64);
                }
            }
        }
        orbit_weights.push(min_w);
        orbit_sizes.push(count);
    }
    Ok(OrbitPartition {
        orbit_count: orbit_weights.len(),
        class_of,
        orbit_weights,
        orbit_sizes,
        weights_consistent: consistent,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Weight2Report {
    pub weight2_cosets: usize,
    pub expected: usize,
    pub all_have_nondegenerate_pair: bool,
    pub identity_holds: bool,
}

/// For the smallest code of the chain: every weight-2 coset contains a pair
/// {a, b} with Det_u(a, b) ≠ 0, and there are r·r̄² of them.
pub fn orbit_weight2_structure(code: &LinearCode) -> Result<Weight2Report> {
    let ctx = code.ctx();
    if code.is_extended() || code.level() != ctx.u() {
        return Err(Error::InvalidLevel {
            level: code.level(),
            u: ctx.u(),
        });
    }
    let n = ctx.n();
    let cols = code.column_syndromes();
    let singles: HashSet<u64> = cols.iter().copied().collect();
    let mut nondegenerate: std::collections::HashMap<u64, bool> = Default::default();
    let mut identity_holds = true;
    for a in 0..n {
        let pa = ctx.position_pair(a);
        for b in (a + 1)..n {
            let pb = ctx.position_pair(b);
            let s = cols[a] ^ cols[b];
            if s == 0 || singles.contains(&s) {
                continue;
            }
            let det = ctx.det_u(pa, pb);
            let h = pa + pb;
            let sh = ctx.mul_u(h.g1, h.g2);
            identity_holds &= sh == ctx.mul_u(pa.g1, pa.g2) + ctx.mul_u(pb.g1, pb.g2) + det;
            *nondegenerate.entry(s).or_insert(false) |= !det.is_zero();
        }
    }
    Ok(Weight2Report {
        weight2_cosets: nondegenerate.len(),
        expected: ctx.r() * ctx.rbar() * ctx.rbar(),
        all_have_nondegenerate_pair: nondegenerate.values().all(|&x| x),
        identity_holds,
    })
}

/// Field label of an extended coordinate: 0 for coordinate 0, α^(p) for p+1.
pub fn extended_label(ctx: &FieldContext, i: usize) -> FieldElement {
    if i == 0 {
        0
    } else {
        ctx.alpha_pow(i - 1)
    }
}

fn extended_index(ctx: &FieldContext, x: FieldElement) -> usize {
    ctx.log_alpha(x).map_or(0, |p| p + 1)
}

/// π_w on the n+1 extended coordinates: the coordinate labelled x goes to x + w.
pub fn translation_permutation(w: FieldElement, ctx: &FieldContext) -> PositionPermutation {
    PositionPermutation {
        map: (0..=ctx.n())
            .map(|i| extended_index(ctx, extended_label(ctx, i) ^ w))
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CtVerdict {
    /// Orbit count equals ρ + 1 under the named subgroup.
    Certified,
    /// More orbits under the subgroup used; not a disproof.
    Undetermined,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupChoice {
    pub name: String,
    pub generators: Vec<GroupElement>,
}

impl GroupChoice {
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }

    pub fn permutations(&self, ctx: &FieldContext) -> Result<Vec<PositionPermutation>> {
        self.generators.iter().map(|g| g.to_permutation(ctx)).collect()
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_group_element(&s).map_err(serde::de::Error::custom)
    }
}

fn parse_group_element(s: &str) -> Result<GroupElement> {
    let bad = || Error::Parse(format!("bad group element {s:?}"));
    let (mat, frob) = match s.split_once("*frob^") {
        Some((m, k)) => (m, k.parse().map_err(|_| bad())?),
        None => (s, 0),
    };
    let nums: Vec<u16> = mat
        .split(['[', ']', ','])
        .filter(|t| !t.is_empty())
        .map(|t| u16::from_str_radix(t.trim_start_matches("0x"), 16).map_err(|_| bad()))
        .collect::<Result<_>>()?;
    if nums.len() != 4 {
        return Err(bad());
    }
    Ok(GroupElement {
        mat: Mat2::new(nums[0], nums[1], nums[2], nums[3]),
        frob,
    })
}

fn linear_choice(name: &str, mats: Vec<Mat2>) -> GroupChoice {
    GroupChoice {
        name: name.into(),
        generators: mats.into_iter().map(GroupElement::linear).collect(),
    }
}

/// The subgroup used by default for a level: GL₂ for i ∈ {0, u}, SL₂ for
/// i = 1, and SL₂ with the diagonal maps diag(d, 1), d·A = A, in between.
pub fn default_group(code: &LinearCode) -> GroupChoice {
    let ctx = code.ctx();
    let (i, u) = (code.level(), ctx.u());
    if i == 0 || i == u {
        return linear_choice("GL2", group_generators(GroupKind::GL2, ctx));
    }
    let mut mats = group_generators(GroupKind::SL2, ctx);
    if i == 1 {
        return linear_choice("SL2", mats);
    }
    if let Some(d) = multiplier_stabilizer_generator(code) {
        mats.push(Mat2 {
            a: d,
            a1: GFuElem(0),
            b: GFuElem(0),
            b1: GFuElem(1),
        });
    }
    linear_choice("SL2+diag(stab A)", mats)
}

/// The generator of {d ≠ 0 : d·A = A} with the smallest logarithm, if the
/// group is nontrivial.
fn multiplier_stabilizer_generator(code: &LinearCode) -> Option<GFuElem> {
    let ctx = code.ctx();
    let table = code.subspace_table();
    let basis = code.subspace_basis();
    let fixes = |d: GFuElem| basis.iter().all(|&a| table[ctx.mul_u(d, a).0 as usize]);
    let q1 = ctx.q() - 1;
    (1..q1)
        .filter(|&k| q1.is_multiple_of(k))
        .map(|k| ctx.zeta_pow(k))
        .find(|&d| fixes(d))
}

/// Extends the default group by the first map γ ↦ diag(d, 1)·γ^(2^k) that
/// stabilizes the code, k = 1, 2, …, m-1.
pub fn semilinear_group(code: &LinearCode) -> Option<GroupChoice> {
    let ctx = code.ctx();
    let mut base = default_group(code);
    for k in 1..ctx.m() {
        for e in 0..ctx.q() - 1 {
            let g = GroupElement {
                mat: Mat2 {
                    a: ctx.zeta_pow(e),
                    a1: GFuElem(0),
                    b: GFuElem(0),
                    b1: GFuElem(1),
                },
                frob: k,
            };
            let perm = g.to_permutation(ctx).ok()?;
            if stabilizes(code, &perm) {
                base.name.push_str("+semilinear");
                base.generators.push(g);
                return Some(base);
            }
        }
    }
    None
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CtReport {
    pub m: usize,
    pub level: usize,
    pub extended: bool,
    pub group: String,
    pub generators: Vec<String>,
    pub orbit_count: usize,
    pub rho: usize,
    pub orbits: Vec<OrbitInfo>,
    pub ct_verdict: CtVerdict,
    /// Orbit count under the default subgroup when a larger one was needed.
    pub default_group_orbit_count: Option<usize>,
}

fn ct_report(
    code: &LinearCode,
    table: &CosetTable,
    choice: &GroupChoice,
    part: &OrbitPartition,
    default_count: Option<usize>,
) -> CtReport {
    CtReport {
        m: code.ctx().m(),
        level: code.level(),
        extended: code.is_extended(),
        group: choice.name.clone(),
        generators: choice.generator_strings(),
        orbit_count: part.orbit_count,
        rho: table.rho(),
        orbits: part.orbits(),
        ct_verdict: if part.orbit_count == table.rho() + 1 {
            CtVerdict::Certified
        } else {
            CtVerdict::Undetermined
        },
        default_group_orbit_count: default_count,
    }
}

fn extended_generators(code: &LinearCode, choice: &GroupChoice) -> Result<Vec<PositionPermutation>> {
    let ctx = code.ctx();
    let mut gens: Vec<PositionPermutation> = choice
        .permutations(ctx)?
        .iter()
        .map(PositionPermutation::lift)
        .collect();
    gens.extend((0..ctx.m()).map(|k| translation_permutation(ctx.alpha_pow(k), ctx)));
    Ok(gens)
}

fn orbits_for(
    code: &LinearCode,
    table: &CosetTable,
    choice: &GroupChoice,
    base: Option<&LinearCode>,
) -> Result<OrbitPartition> {
    let gens = match base {
        Some(b) => extended_generators(b, choice)?,
        None => choice.permutations(code.ctx())?,
    };
    orbits_on_cosets(&gens, code, table)
}

/// Orbit analysis of a code (extended or not), escalating to the semilinear
/// group when the default subgroup does not certify.
pub fn certify_ct(code: &LinearCode, table: &CosetTable, base: Option<&LinearCode>) -> Result<CtReport> {
    let group_source = base.unwrap_or(code);
    let choice = default_group(group_source);
    let part = orbits_for(code, table, &choice, base)?;
    if part.orbit_count == table.rho() + 1 {
        return Ok(ct_report(code, table, &choice, &part, None));
    }
    if let Some(bigger) = semilinear_group(group_source) {
        let part2 = orbits_for(code, table, &bigger, base)?;
        return Ok(ct_report(code, table, &bigger, &part2, Some(part.orbit_count)));
    }
    Ok(ct_report(code, table, &choice, &part, None))
}

/// Orbits of the extended code under the lifted base group and translations.
pub fn extended_orbits(code_star: &LinearCode, base: &LinearCode, table: &CosetTable) -> Result<CtReport> {
    if !code_star.is_extended() || base.is_extended() {
        return Err(Error::Internal(
            "expected an extended code and its base code".into(),
        ));
    }
    certify_ct(code_star, table, Some(base))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub level: usize,
    pub prediction: bool,
    pub report: CtReport,
}

/// CT predicted iff i = 0, i = 1, i = u or 2^i ≤ u + 1.
pub fn conjecture_prediction(u: usize, i: usize) -> bool {
    i <= 1 || i == u || (1usize << i) <= u + 1
}

/// Orbit counts against the prediction for every level of a chain, m ≤ 8.
pub fn test_conjecture(chain: &[LinearCode]) -> Result<Vec<ConjectureRow>> {
    let mut rows = Vec::new();
    for code in chain {
        let ctx = code.ctx();
        if ctx.m() > 8 {
            return Err(Error::TooLarge {
                what: "field degree for orbit analysis",
                size: ctx.m(),
                limit: 8,
            });
        }
        let table = enumerate_cosets(code)?;
        rows.push(ConjectureRow {
            level: code.level(),
            prediction: conjecture_prediction(ctx.u(), code.level()),
            report: certify_ct(code, &table, None)?,
        });
    }
    rows.sort_by_key(|r| r.level);
    Ok(rows)
}

/// Extends `code`, enumerates cosets and runs the extended orbit analysis.
pub fn extended_ct(base: &LinearCode) -> Result<CtReport> {
    let star = extend_code(base)?;
    let table = enumerate_cosets(&star)?;
    extended_orbits(&star, base, &table)
}
