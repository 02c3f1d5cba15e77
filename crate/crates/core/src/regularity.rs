//! Coset enumeration and the complete-regularity checks built on it.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::codes::{DualSpectrum, LinearCode};
use crate::error::{Error, Result};

/// Cosets are enumerated exhaustively; keep the syndrome space bounded.
pub const MAX_COSET_BITS: usize = 20;

#[derive(Clone, Debug)]
pub struct CosetRecord {
    pub syndrome: u64,
    /// Lexicographically smallest minimum-weight vector of the coset
    /// (comparing sorted supports).
    pub leader: BitVec,
    pub weight: usize,
    /// Number of coset vectors of each weight 0..=length, once computed.
    pub distribution: Option<Vec<BigUint>>,
}

#[derive(Clone, Debug)]
pub struct CosetTable {
    length: usize,
    syndrome_bits: usize,
    records: Vec<CosetRecord>,
    mu: Vec<u64>,
    rho: usize,
}

impl CosetTable {
    pub fn records(&self) -> &[CosetRecord] {
        &self.records
    }

    /// Record for syndrome `s`; records are indexed by syndrome.
    pub fn record(&self, s: u64) -> &CosetRecord {
        &self.records[s as usize]
    }

    pub fn weight_of(&self, s: u64) -> usize {
        self.records[s as usize].weight
    }

    /// μ_0, …, μ_ρ: number of cosets of each weight.
    pub fn mu(&self) -> &[u64] {
        &self.mu
    }

    /// Covering radius.
    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn syndrome_bits(&self) -> usize {
        self.syndrome_bits
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Fills every record's weight distribution using the dual transform.
    pub fn fill_distributions(&mut self, transform: &CosetTransform) -> Result<()> {
        let dists: Vec<Vec<BigUint>> = self
            .records
            .par_iter()
            .map(|r| transform.distribution(&r.leader))
            .collect::<Result<_>>()?;
        for (r, d) in self.records.iter_mut().zip(dists) {
            r.distribution = Some(d);
        }
        Ok(())
    }
}

/// Weight of every syndrome (its distance from 0 in the coset graph) by BFS.
fn syndrome_weights(code: &LinearCode) -> Vec<u8> {
    let size = 1usize << code.redundancy();
    let mut dist = vec![u8::MAX; size];
    dist[0] = 0;
    let mut frontier = vec![0u64];
    let mut level = 0u8;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &s in &frontier {
            for &g in code.column_syndromes() {
                let t = (s ^ g) as usize;
                if dist[t] == u8::MAX {
                    dist[t] = level + 1;
                    next.push(t as u64);
                }
            }
        }
        frontier = next;
        level += 1;
    }
    dist
}

/// Visits the `w`-subsets of `0..n` in lexicographic order with their
/// syndromes; stops when `visit` returns false.
fn for_each_subset(code: &LinearCode, w: usize, visit: &mut dyn FnMut(&[usize], u64) -> bool) {
    fn rec(
        cols: &[u64],
        w: usize,
        start: usize,
        acc: u64,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize], u64) -> bool,
    ) -> bool {
        if chosen.len() == w {
            return visit(chosen, acc);
        }
        let remaining = w - chosen.len();
        for p in start..=cols.len() - remaining {
            chosen.push(p);
            let go_on = rec(cols, w, p + 1, acc ^ cols[p], chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    let cols = code.column_syndromes();
    if w > cols.len() {
        return;
    }
    rec(cols, w, 0, 0, &mut Vec::with_capacity(w), visit);
}

/// One record per syndrome, with leaders found by scanning vectors of
/// weight 0, 1, 2, … in lexicographic order.
pub fn enumerate_cosets(code: &LinearCode) -> Result<CosetTable> {
    let bits = code.redundancy();
    if bits > MAX_COSET_BITS {
        return Err(Error::TooLarge {
            what: "syndrome space (bits)",
            size: bits,
            limit: MAX_COSET_BITS,
        });
    }
    let n = code.length();
    let dist = syndrome_weights(code);
    if dist.contains(&u8::MAX) {
        return Err(Error::Internal(
            "parity columns do not span the syndrome space".into(),
        ));
    }
    let rho = *dist.iter().max().unwrap() as usize;
    let mut mu = vec![0u64; rho + 1];
    for &d in &dist {
        mu[d as usize] += 1;
    }
    let mut leaders: Vec<Option<Vec<usize>>> = vec![None; dist.len()];
    leaders[0] = Some(Vec::new());
    for (w, &count) in mu.iter().enumerate().skip(1) {
        let mut remaining = count;
        for_each_subset(code, w, &mut |support, s| {
            let s = s as usize;
            if dist[s] as usize == w && leaders[s].is_none() {
                leaders[s] = Some(support.to_vec());
                remaining -= 1;
            }
            remaining > 0
        });
        if remaining != 0 {
            return Err(Error::Internal(format!(
                "{remaining} cosets of weight {w} without leader"
            )));
        }
    }
    let records = leaders
        .into_iter()
        .enumerate()
        .map(|(s, sup)| {
            let sup = sup.expect("every coset has a leader");
            CosetRecord {
                syndrome: s as u64,
                leader: BitVec::from_support(n, &sup),
                weight: dist[s] as usize,
                distribution: None,
            }
        })
        .collect();
    Ok(CosetTable {
        length: n,
        syndrome_bits: bits,
        records,
        mu,
        rho,
    })
}

/// Coefficients of (1 + y)^(n-w) (1 - y)^w.
fn krawtchouk_column(n: usize, w: usize) -> Vec<BigInt> {
    let binom_row = |k: usize| {
        let mut row = vec![BigInt::one(); k + 1];
        for j in 1..k {
            row[j] = &row[j - 1] * BigInt::from(k - j + 1) / BigInt::from(j);
        }
        row
    };
    let plus = binom_row(n - w);
    let mut minus = binom_row(w);
    for (h, c) in minus.iter_mut().enumerate() {
        if h % 2 == 1 {
            *c = -c.clone();
        }
    }
    let mut out = vec![BigInt::zero(); n + 1];
    for (a, x) in plus.iter().enumerate() {
        for (b, y) in minus.iter().enumerate() {
            out[a + b] += x * y;
        }
    }
    out
}

/// Exact dual transform of coset weight enumerators:
///
/// `A_j(C + v) = |C⊥|^-1 Σ_{d ∈ C⊥} (-1)^{d·v} K_j(wt d)`,
///
/// with K_j(w) the coefficient of y^j in (1+y)^(n-w)(1-y)^w.
pub struct CosetTransform {
    n: usize,
    dual: Vec<BitVec>,
    dual_weights: Vec<usize>,
    kraw: HashMap<usize, Vec<BigInt>>,
}

impl CosetTransform {
    /// `dual_words` must be the complete dual code, zero word included.
    pub fn new(n: usize, dual_words: Vec<BitVec>) -> Result<Self> {
        if !dual_words.len().is_power_of_two() {
            return Err(Error::Internal("dual word list is not a full linear code".into()));
        }
        let dual_weights: Vec<usize> = dual_words.iter().map(BitVec::weight).collect();
        let mut kraw = HashMap::new();
        for &w in &dual_weights {
            kraw.entry(w).or_insert_with(|| krawtchouk_column(n, w));
        }
        Ok(CosetTransform {
            n,
            dual: dual_words,
            dual_weights,
            kraw,
        })
    }

    pub fn distribution(&self, leader: &BitVec) -> Result<Vec<BigUint>> {
        if leader.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: leader.len(),
            });
        }
        let mut signed: HashMap<usize, i64> = HashMap::new();
        for (d, &w) in self.dual.iter().zip(&self.dual_weights) {
            *signed.entry(w).or_insert(0) += if d.dot(leader) { -1 } else { 1 };
        }
        let size = BigInt::from(self.dual.len());
        let mut out = Vec::with_capacity(self.n + 1);
        for j in 0..=self.n {
            let mut acc = BigInt::zero();
            for (&w, &c) in &signed {
                if c != 0 {
                    acc += &self.kraw[&w][j] * BigInt::from(c);
                }
            }
            if !(&acc % &size).is_zero() || acc.sign() == Sign::Minus {
                return Err(Error::Internal(format!(
                    "dual transform produced a non-integral or negative count at weight {j}"
                )));
            }
            out.push((acc / &size).to_biguint().expect("non-negative"));
        }
        Ok(out)
    }
}

/// Weight distribution of the coset of `record` from the complete dual code.
pub fn coset_weight_distribution(record: &CosetRecord, dual_words: &[BitVec]) -> Result<Vec<BigUint>> {
    CosetTransform::new(record.leader.len(), dual_words.to_vec())?.distribution(&record.leader)
}

/// (b_0, …, b_{ρ-1}; c_1, …, c_ρ) together with a_0, …, a_ρ.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub a: Vec<u64>,
}

impl IntersectionArray {
    /// Builds the array of a regular structure of valency `valency`.
    pub fn new(b: Vec<u64>, c: Vec<u64>, valency: u64) -> Self {
        assert_eq!(b.len(), c.len());
        let d = b.len();
        let a = (0..=d)
            .map(|l| {
                let bl = if l < d { b[l] } else { 0 };
                let cl = if l > 0 { c[l - 1] } else { 0 };
                valency.saturating_sub(bl + cl)
            })
            .collect();
        IntersectionArray { b, c, a }
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn valency(&self) -> u64 {
        self.b.first().copied().unwrap_or(0)
    }

    /// c_l for 1 ≤ l ≤ D.
    pub fn c_at(&self, l: usize) -> u64 {
        self.c[l - 1]
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "({}; {})", join(&self.b), join(&self.c))
    }
}

impl fmt::Debug for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// (2^m - 1, 2^m - 2^(m-i), 1; 1, 2^(m-i), 2^m - 1), for 1 ≤ i ≤ u.
pub fn expected_code_array(m: usize, i: usize) -> IntersectionArray {
    let full = 1u64 << m;
    let part = 1u64 << (m - i);
    IntersectionArray::new(vec![full - 1, full - part, 1], vec![1, part, full - 1], full - 1)
}

/// (2^m, 2^m - 1, 2^m - 2^(m-i), 1; 1, 2^(m-i), 2^m - 1, 2^m), for 1 ≤ i ≤ u.
pub fn expected_extended_array(m: usize, i: usize) -> IntersectionArray {
    let full = 1u64 << m;
    let part = 1u64 << (m - i);
    IntersectionArray::new(
        vec![full, full - 1, full - part, 1],
        vec![1, part, full - 1, full],
        full,
    )
}

/// The variant (2^m + 1, 2^m, 2^m - 2^(m-i), 1; 1, 2^(m-i), 2^m, 2^m + 1)
/// printed for the extended coset graphs; kept to report the discrepancy.
pub fn printed_extended_graph_array(m: usize, i: usize) -> IntersectionArray {
    let full = 1u64 << m;
    let part = 1u64 << (m - i);
    IntersectionArray::new(
        vec![full + 1, full, full - part, 1],
        vec![1, part, full, full + 1],
        full + 1,
    )
}

/// μ = (1, n, (2^i - 1) n, 2^i - 1).
pub fn expected_mu(m: usize, i: usize) -> Vec<u64> {
    let n = (1u64 << m) - 1;
    let t = (1u64 << i) - 1;
    vec![1, n, t * n, t]
}

/// λ_i = 2^(m-i-1) - 1.
pub fn expected_lambda(m: usize, i: usize) -> u64 {
    (1u64 << (m - i - 1)) - 1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegularityReport {
    pub completely_regular: bool,
    pub array: IntersectionArray,
    /// Two cosets of equal weight with different neighbour counts.
    pub witness: Option<(u64, u64)>,
}

/// Counts, for every coset of weight l, how many of the n unit-vector
/// translates land in weight l-1, l, l+1, and checks the counts depend only on l.
pub fn verify_completely_regular(code: &LinearCode, table: &CosetTable) -> RegularityReport {
    let cols = code.column_syndromes();
    let counts: Vec<[u64; 3]> = table
        .records
        .par_iter()
        .map(|r| {
            let mut c = [0u64; 3];
            for &g in cols {
                let w = table.weight_of(r.syndrome ^ g);
                if w + 1 == r.weight {
                    c[0] += 1;
                } else if w == r.weight {
                    c[1] += 1;
                } else {
                    c[2] += 1;
                }
            }
            c
        })
        .collect();
    let rho = table.rho;
    let mut reference: Vec<Option<(u64, [u64; 3])>> = vec![None; rho + 1];
    let mut witness = None;
    for (r, cnt) in table.records.iter().zip(&counts) {
        match reference[r.weight] {
            None => reference[r.weight] = Some((r.syndrome, *cnt)),
            Some((s0, c0)) => {
                if c0 != *cnt && witness.is_none() {
                    witness = Some((s0, r.syndrome));
                }
            }
        }
    }
    let per_weight: Vec<[u64; 3]> = reference.iter().map(|x| x.expect("μ_l > 0").1).collect();
    let b = (0..rho).map(|l| per_weight[l][2]).collect();
    let c = (1..=rho).map(|l| per_weight[l][0]).collect();
    RegularityReport {
        completely_regular: witness.is_none(),
        array: IntersectionArray::new(b, c, cols.len() as u64),
        witness,
    }
}

/// b_i μ_i = c_{i+1} μ_{i+1} for i = 0..ρ-1.
pub fn verify_mu_identity(table: &CosetTable, array: &IntersectionArray) -> bool {
    let mu = table.mu();
    array.diameter() == table.rho() && (0..table.rho()).all(|i| array.b[i] * mu[i] == array.c[i] * mu[i + 1])
}

/// Uniformly packed in the wide sense: covering radius equals external distance.
pub fn verify_uniformly_packed(spectrum: &DualSpectrum, table: &CosetTable) -> bool {
    spectrum.external_distance() == table.rho()
}

/// All weight-3 codewords of an unextended code in the family, found as the
/// triples {γ, γ', γ+γ'} with Det_u(γ, γ') ∈ A_{u-i}. Each triple once.
pub fn enumerate_weight3_codewords(code: &LinearCode) -> Result<Vec<BitVec>> {
    if code.is_extended() {
        return Err(Error::Internal(
            "weight-3 enumeration needs an unextended code".into(),
        ));
    }
    let ctx = code.ctx();
    let n = ctx.n();
    let table = code.subspace_table();
    let mut out = Vec::new();
    for p in 0..n {
        let gp = ctx.position_pair(p);
        for q in (p + 1)..n {
            let d = ctx.det_u(gp, ctx.position_pair(q));
            if !table[d.0 as usize] {
                continue;
            }
            let k = ctx
                .log_alpha(ctx.alpha_pow(p) ^ ctx.alpha_pow(q))
                .expect("distinct positions");
            if k > q {
                out.push(BitVec::from_support(n, &[p, q, k]));
            }
        }
    }
    Ok(out)
}

/// Codewords of weight `w ∈ {3, 4}` via syndrome lookup of the last position.
/// Requires distinct nonzero parity columns (minimum distance ≥ 3).
pub fn enumerate_codewords_of_weight(code: &LinearCode, w: usize) -> Result<Vec<BitVec>> {
    if !(3..=4).contains(&w) {
        return Err(Error::Internal(format!(
            "weight {w} enumeration is not supported"
        )));
    }
    let cols = code.column_syndromes();
    let n = cols.len();
    let mut by_syndrome = HashMap::with_capacity(n);
    for (j, &s) in cols.iter().enumerate() {
        if s == 0 || by_syndrome.insert(s, j).is_some() {
            return Err(Error::Internal(
                "parity columns are not distinct and nonzero".into(),
            ));
        }
    }
    let mut out = Vec::new();
    let mut emit = |sup: &[usize], s: u64| {
        if let Some(&last) = by_syndrome.get(&s) {
            if last > *sup.last().unwrap() {
                let mut full = sup.to_vec();
                full.push(last);
                out.push(BitVec::from_support(n, &full));
            }
        }
        true
    };
    for_each_subset(code, w - 1, &mut emit);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignReport {
    pub n: usize,
    pub w: usize,
    pub t: usize,
    pub lambda: Option<u64>,
    pub verdict: bool,
    pub block_count: usize,
    pub counterexample: Option<Vec<usize>>,
    pub note: Option<String>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128)
}

/// Colex rank of a sorted subset.
fn colex_rank(subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .map(|(i, &x)| binomial(x, i + 1) as usize)
        .sum()
}

fn colex_unrank(mut rank: usize, t: usize) -> Vec<usize> {
    let mut out = vec![0; t];
    for i in (0..t).rev() {
        let mut x = i;
        while binomial(x + 1, i + 1) as usize <= rank {
            x += 1;
        }
        out[i] = x;
        rank -= binomial(x, i + 1) as usize;
    }
    out
}

/// Checks that every t-subset of positions is covered by the same number λ
/// of the weight-`w` words.
pub fn verify_design(words: &[BitVec], n: usize, w: usize, t: usize) -> Result<DesignReport> {
    const LIMIT: u128 = 1 << 26;
    let mut report = DesignReport {
        n,
        w,
        t,
        lambda: None,
        verdict: false,
        block_count: words.len(),
        counterexample: None,
        note: None,
    };
    if words.is_empty() {
        report.note = Some("empty word set".into());
        return Ok(report);
    }
    if t == 0 || t > w {
        return Err(Error::Internal(format!(
            "invalid design strength t={t} for w={w}"
        )));
    }
    let subsets = binomial(n, t);
    if subsets > LIMIT {
        return Err(Error::TooLarge {
            what: "t-subset count",
            size: subsets as usize,
            limit: LIMIT as usize,
        });
    }
    let mut counts = vec![0u64; subsets as usize];
    for word in words {
        if word.len() != n || word.weight() != w {
            return Err(Error::Internal("word of unexpected length or weight".into()));
        }
        let sup = word.support();
        let mut idx: Vec<usize> = (0..t).collect();
        loop {
            let sub: Vec<usize> = idx.iter().map(|&i| sup[i]).collect();
            counts[colex_rank(&sub)] += 1;
            // next t-combination of 0..w
            let mut k = t;
            while k > 0 && idx[k - 1] == w - t + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..t {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    let lambda = counts[0];
    match counts.iter().position(|&c| c != lambda) {
        None => {
            report.lambda = Some(lambda);
            report.verdict = true;
        }
        Some(bad) => {
            report.counterexample = Some(colex_unrank(bad, t));
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionCondition {
    Holds,
    Fails,
    NotApplicable,
}

/// w_1 + w_3 = 2 w_2 = n + 1 for a dual with exactly three nonzero weights.
pub fn verify_extension_condition(spectrum: &DualSpectrum, n: usize) -> ExtensionCondition {
    let w = spectrum.distinct_weights();
    if w.len() != 3 {
        return ExtensionCondition::NotApplicable;
    }
    if w[0] + w[2] == 2 * w[1] && 2 * w[1] == n + 1 {
        ExtensionCondition::Holds
    } else {
        ExtensionCondition::Fails
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtendedArrayReport {
    pub regularity: RegularityReport,
    pub expected: IntersectionArray,
    pub matches_expected: bool,
    pub printed_graph_variant: IntersectionArray,
    pub matches_printed_graph_variant: bool,
}

/// Runs the complete-regularity check on an extended code and compares the
/// array with the expected extended form and with the printed graph variant.
pub fn verify_extended_array(code_star: &LinearCode, table: &CosetTable) -> Result<ExtendedArrayReport> {
    if !code_star.is_extended() {
        return Err(Error::Internal("expected an extended code".into()));
    }
    let m = code_star.ctx().m();
    let i = code_star.level();
    let regularity = verify_completely_regular(code_star, table);
    let expected = expected_extended_array(m, i);
    let printed = printed_extended_graph_array(m, i);
    Ok(ExtendedArrayReport {
        matches_expected: regularity.completely_regular && regularity.array == expected,
        matches_printed_graph_variant: regularity.completely_regular && regularity.array == printed,
        regularity,
        expected,
        printed_graph_variant: printed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_chain, dual_enumerate, dual_spectrum, extend_code, SubspaceChoice};
    use crate::field::FieldContext;
    use std::sync::Arc;

    fn chain(m: usize) -> Vec<LinearCode> {
        let ctx = Arc::new(FieldContext::new(m).unwrap());
        build_chain(ctx, &SubspaceChoice::standard(m / 2)).unwrap()
    }

    /// Brute-force coset weight distribution: enumerate every codeword.
    fn brute_distribution(code: &LinearCode, leader: &BitVec) -> Vec<BigUint> {
        let basis = code.generator_basis();
        let n = code.length();
        let mut counts = vec![0u64; n + 1];
        let mut cur = leader.clone();
        counts[cur.weight()] += 1;
        for step in 1usize..(1 << basis.len()) {
            cur.xor_assign(&basis[step.trailing_zeros() as usize]);
            counts[cur.weight()] += 1;
        }
        counts.into_iter().map(BigUint::from).collect()
    }

    #[test]
    fn cosets_of_m4_codes() {
        let ch = chain(4);
        let t2 = enumerate_cosets(&ch[0]).unwrap();
        assert_eq!((t2.len(), t2.rho()), (64, 3));
        assert_eq!(t2.mu(), &[1, 15, 45, 3]);
        let th = enumerate_cosets(&ch[2]).unwrap();
        assert_eq!((th.len(), th.rho()), (16, 1));
        for r in t2.records() {
            assert_eq!(r.leader.weight(), r.weight);
            assert_eq!(ch[0].syndrome(&r.leader).unwrap(), r.syndrome);
        }
    }

    #[test]
    fn leaders_are_lexicographically_smallest() {
        let ch = chain(4);
        let code = &ch[1];
        let t = enumerate_cosets(code).unwrap();
        // brute force over all vectors of weight <= 3
        let n = 15;
        let mut best: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut all: Vec<Vec<usize>> = vec![vec![]];
        for a in 0..n {
            all.push(vec![a]);
            for b in (a + 1)..n {
                all.push(vec![a, b]);
                for c in (b + 1)..n {
                    all.push(vec![a, b, c]);
                }
            }
        }
        all.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
        for sup in all {
            best.entry(code.syndrome_of_support(&sup)).or_insert(sup);
        }
        for r in t.records() {
            assert_eq!(r.leader.support(), best[&r.syndrome]);
        }
    }

    #[test]
    fn mu_for_m6_top_level() {
        let ch = chain(6);
        let t = enumerate_cosets(&ch[0]).unwrap();
        assert_eq!(t.mu(), &[1, 63, 441, 7]);
        assert_eq!(t.mu().iter().sum::<u64>(), 512);
    }

    #[test]
    fn too_many_syndromes_rejected() {
        let ctx = Arc::new(FieldContext::new(12).unwrap());
        let code = crate::codes::build_cu(ctx).unwrap();
        let mut rows = code.parity().rows().to_vec();
        rows.extend((0..3).map(|j| BitVec::unit(4095, j)));
        let parity = crate::codes::ParityCheckMatrix::from_rows(4095, rows).unwrap();
        let big = code.with_parity(parity).unwrap();
        assert!(matches!(enumerate_cosets(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn dual_transform_matches_brute_force_m4() {
        for code in chain(4) {
            for c in [code.clone(), extend_code(&code).unwrap()] {
                let mut t = enumerate_cosets(&c).unwrap();
                let tr = CosetTransform::new(c.length(), dual_enumerate(&c).unwrap()).unwrap();
                t.fill_distributions(&tr).unwrap();
                for r in t.records() {
                    assert_eq!(
                        r.distribution.as_ref().unwrap(),
                        &brute_distribution(&c, &r.leader)
                    );
                }
            }
        }
    }

    #[test]
    fn distribution_properties() {
        let ch = chain(4);
        let code = &ch[0];
        let dual = dual_enumerate(code).unwrap();
        let t = enumerate_cosets(code).unwrap();
        let zero = coset_weight_distribution(t.record(0), &dual).unwrap();
        assert_eq!(zero[0], BigUint::one());
        let weight3: Vec<_> = t.records().iter().filter(|r| r.weight == 3).collect();
        assert_eq!(weight3.len(), 3);
        let d0 = coset_weight_distribution(weight3[0], &dual).unwrap();
        for r in &weight3[1..] {
            assert_eq!(coset_weight_distribution(r, &dual).unwrap(), d0);
        }
        for r in t.records() {
            let d = coset_weight_distribution(r, &dual).unwrap();
            let total: BigUint = d.iter().sum();
            assert_eq!(total, BigUint::from(1u32 << code.dimension()));
            assert!(d[..r.weight].iter().all(Zero::is_zero));
            assert!(!d[r.weight].is_zero());
        }
    }

    #[test]
    fn transform_rejects_incomplete_dual() {
        let ch = chain(4);
        let mut dual = dual_enumerate(&ch[0]).unwrap();
        dual.truncate(48);
        assert!(CosetTransform::new(15, dual).is_err());
    }

    #[test]
    fn arrays_for_m4_and_m6() {
        let ch = chain(4);
        let rep = verify_completely_regular(&ch[0], &enumerate_cosets(&ch[0]).unwrap());
        assert!(rep.completely_regular);
        assert_eq!(rep.array.to_string(), "(15, 12, 1; 1, 4, 15)");
        assert_eq!(rep.array.a, vec![0, 2, 10, 0]);
        let rep = verify_completely_regular(&ch[2], &enumerate_cosets(&ch[2]).unwrap());
        assert!(rep.completely_regular);
        assert_eq!(rep.array.to_string(), "(15; 1)");
        let ch6 = chain(6);
        let c1 = &ch6[2];
        assert_eq!(c1.level(), 1);
        let rep = verify_completely_regular(c1, &enumerate_cosets(c1).unwrap());
        assert!(rep.completely_regular);
        assert_eq!(rep.array, expected_code_array(6, 1));
        assert_eq!(rep.array.to_string(), "(63, 32, 1; 1, 32, 63)");
    }

    #[test]
    fn not_completely_regular_gives_witness() {
        // One extra generic parity row on top of C^(2) at m = 4.
        let ch = chain(4);
        let base = &ch[0];
        let mut rows = base.parity().rows().to_vec();
        rows.push(BitVec::from_support(15, &[0, 1]));
        let parity = crate::codes::ParityCheckMatrix::from_rows(15, rows).unwrap();
        let tmp = base.with_parity(parity).unwrap();
        let t = enumerate_cosets(&tmp).unwrap();
        let rep = verify_completely_regular(&tmp, &t);
        assert!(!rep.completely_regular);
        let (a, b) = rep.witness.unwrap();
        assert_eq!(t.weight_of(a), t.weight_of(b));
    }

    #[test]
    fn mu_identity() {
        for m in [4, 6] {
            for code in chain(m) {
                let t = enumerate_cosets(&code).unwrap();
                let rep = verify_completely_regular(&code, &t);
                assert!(verify_mu_identity(&t, &rep.array));
                if code.level() > 0 {
                    assert_eq!(t.mu(), expected_mu(m, code.level()).as_slice());
                }
            }
        }
        let ch = chain(4);
        let t = enumerate_cosets(&ch[0]).unwrap();
        let a = &verify_completely_regular(&ch[0], &t).array;
        assert_eq!(a.b[1] * t.mu()[1], 180);
        assert_eq!(a.c[1] * t.mu()[2], 180);
    }

    #[test]
    fn uniformly_packed_and_extension_condition() {
        let ch = chain(4);
        let c2 = &ch[0];
        let t = enumerate_cosets(c2).unwrap();
        let s = dual_spectrum(c2).unwrap();
        assert!(verify_uniformly_packed(&s, &t));
        assert_eq!(verify_extension_condition(&s, 15), ExtensionCondition::Holds);
        let e = extend_code(c2).unwrap();
        assert!(verify_uniformly_packed(
            &dual_spectrum(&e).unwrap(),
            &enumerate_cosets(&e).unwrap()
        ));
        let h = &ch[2];
        let sh = dual_spectrum(h).unwrap();
        assert!(verify_uniformly_packed(&sh, &enumerate_cosets(h).unwrap()));
        assert_eq!(
            verify_extension_condition(&sh, 15),
            ExtensionCondition::NotApplicable
        );
        let synthetic = DualSpectrum {
            weights: [(5, 1), (8, 1), (10, 1)].into_iter().collect(),
        };
        assert_eq!(
            verify_extension_condition(&synthetic, 15),
            ExtensionCondition::Fails
        );
        let ch6 = chain(6);
        let s61 = dual_spectrum(&ch6[2]).unwrap();
        assert_eq!(s61.distinct_weights(), vec![28, 32, 36]);
        assert_eq!(verify_extension_condition(&s61, 63), ExtensionCondition::Holds);
    }

    #[test]
    fn weight3_words_and_designs() {
        let ch = chain(4);
        let counts: Vec<usize> = ch
            .iter()
            .map(|c| enumerate_weight3_codewords(c).unwrap().len())
            .collect();
        assert_eq!(counts, vec![5, 15, 35]);
        for code in &ch {
            let words = enumerate_weight3_codewords(code).unwrap();
            for w in &words {
                assert!(code.is_member(w).unwrap());
            }
            let mut generic = enumerate_codewords_of_weight(code, 3).unwrap();
            let mut mine = words.clone();
            generic.sort();
            mine.sort();
            assert_eq!(generic, mine);
            let rep = verify_design(&words, 15, 3, 1).unwrap();
            assert!(rep.verdict);
            assert_eq!(rep.lambda, Some(expected_lambda(4, code.level())));
        }
        let c1 = &ch[1];
        let ext = extend_code(c1).unwrap();
        let w4 = enumerate_codewords_of_weight(&ext, 4).unwrap();
        let rep = verify_design(&w4, 16, 4, 2).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.lambda, Some(3));
    }

    #[test]
    fn corrupted_design_fails() {
        let ch = chain(4);
        let mut words = enumerate_weight3_codewords(&ch[1]).unwrap();
        let removed = words.remove(0);
        let rep = verify_design(&words, 15, 3, 1).unwrap();
        assert!(!rep.verdict);
        let ce = rep.counterexample.unwrap();
        assert!(removed.get(ce[0]) || rep.lambda.is_none());
        let empty = verify_design(&[], 15, 3, 1).unwrap();
        assert!(!empty.verdict);
        assert!(empty.note.is_some());
    }

    #[test]
    fn colex_round_trip() {
        for t in 1..=3 {
            for r in 0..200 {
                assert_eq!(colex_rank(&colex_unrank(r, t)), r);
            }
        }
    }

    #[test]
    fn extended_arrays_m4() {
        let ch = chain(4);
        for (code, s) in [
            (&ch[0], "(16, 15, 12, 1; 1, 4, 15, 16)"),
            (&ch[1], "(16, 15, 8, 1; 1, 8, 15, 16)"),
        ] {
            let e = extend_code(code).unwrap();
            let t = enumerate_cosets(&e).unwrap();
            assert_eq!(t.len(), 2 * (1 << code.redundancy()));
            let rep = verify_extended_array(&e, &t).unwrap();
            assert!(rep.matches_expected);
            assert!(!rep.matches_printed_graph_variant);
            assert_eq!(rep.regularity.array.to_string(), s);
        }
    }

    #[test]
    fn krawtchouk_small() {
        // (1+y)^2 (1-y)^1 = 1 + y - y^2 - y^3
        let k = krawtchouk_column(3, 1);
        let want: Vec<BigInt> = [1, 1, -1, -1].into_iter().map(BigInt::from).collect();
        assert_eq!(k, want);
    }
}
