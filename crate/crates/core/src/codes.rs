//! Parity-check descriptions of the nested codes C^(u) ⊂ … ⊂ C^(0) and of
//! their extensions by an overall parity coordinate.
//!
//! Coordinates of the unextended codes are labelled by α^0, …, α^(n-1).
//! Extended codes put the parity coordinate at index 0, labelled by the
//! field element 0, and shift the remaining coordinates up by one.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bits::{self, BitVec, Echelon};
use crate::error::{Error, Result};
use crate::field::{FieldConfig, FieldContext, GFuElem};

/// Syndromes are packed into a machine word.
pub const MAX_SYNDROME_BITS: usize = 63;

/// Rows of a binary matrix with a fixed column count.
#[derive(Clone, PartialEq, Eq)]
pub struct ParityCheckMatrix {
    length: usize,
    rows: Vec<BitVec>,
}

impl ParityCheckMatrix {
    pub fn from_rows(length: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != length) {
            return Err(Error::LengthMismatch {
                expected: length,
                got: bad.len(),
            });
        }
        Ok(ParityCheckMatrix { length, rows })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        bits::rank(&self.rows)
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.rows.len()
    }

    /// Column `j` read as an integer, row `r` giving bit `r`.
    pub fn column(&self, j: usize) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, row)| acc | (row.get(j) as u64) << r)
    }

    /// `H v^T` packed as an integer, row `r` giving bit `r`.
    pub fn syndrome(&self, v: &BitVec) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (r, row)| acc | (row.dot(v) as u64) << r)
    }

    /// Same row space (hence the same code)?
    pub fn same_row_space(&self, other: &ParityCheckMatrix) -> bool {
        if self.length != other.length {
            return false;
        }
        let a = Echelon::new(self.rows.clone());
        let b = Echelon::new(other.rows.clone());
        a.rank() == b.rank() && b.rows().iter().all(|r| a.contains(r))
    }

    /// One row per line, characters `0`/`1`.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows.len() * (self.length + 1));
        for r in &self.rows {
            s.push_str(&r.to_bit_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = BitVec::from_bit_str(line)
                .ok_or_else(|| Error::Parse(format!("line {}: expected only 0/1", lineno + 1)))?;
            rows.push(row);
        }
        let length = rows.first().map(BitVec::len).unwrap_or(0);
        Self::from_rows(length, rows)
    }
}

impl fmt::Debug for ParityCheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParityCheckMatrix({}x{})", self.rows.len(), self.length)
    }
}

/// H_m: column i is the binary expansion of α^i.
pub fn build_hamming_parity(ctx: &FieldContext) -> ParityCheckMatrix {
    field_rows(ctx, |i| ctx.alpha_pow(i))
}

/// E_m: column i is the binary expansion of α^(ir). Only u of its m rows
/// are independent.
pub fn build_power_parity(ctx: &FieldContext) -> ParityCheckMatrix {
    field_rows(ctx, |i| ctx.alpha_pow(i * ctx.r()))
}

fn field_rows(ctx: &FieldContext, column: impl Fn(usize) -> u32) -> ParityCheckMatrix {
    let n = ctx.n();
    let mut rows = vec![BitVec::zeros(n); ctx.m()];
    for i in 0..n {
        let x = column(i);
        for (b, row) in rows.iter_mut().enumerate() {
            if (x >> b) & 1 == 1 {
                row.set(i, true);
            }
        }
    }
    ParityCheckMatrix { length: n, rows }
}

/// Ordered basis b_1, …, b_u of F_2^u (= GF(2^u) as a binary space).
/// Level i uses A_{u-i} = span(b_1, …, b_{u-i}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceChoice {
    basis: Vec<GFuElem>,
}

impl SubspaceChoice {
    /// The polynomial basis 1, ζ, ζ², … in order.
    pub fn standard(u: usize) -> Self {
        SubspaceChoice {
            basis: (0..u).map(|k| GFuElem(1 << k)).collect(),
        }
    }

    /// Uses `leading` as the first basis vectors and completes greedily with
    /// standard basis vectors.
    pub fn with_leading(u: usize, leading: &[GFuElem]) -> Result<Self> {
        if leading.len() > u {
            return Err(Error::InvalidSubspace(format!(
                "{} vectors given for a space of dimension {u}",
                leading.len()
            )));
        }
        let to_bits = |e: GFuElem| {
            let sup: Vec<usize> = (0..u).filter(|&k| e.bit(k)).collect();
            BitVec::from_support(u, &sup)
        };
        let mut ech = Echelon::new(Vec::new());
        let mut basis = Vec::with_capacity(u);
        for &e in leading {
            if e.0 >> u != 0 {
                return Err(Error::InvalidSubspace(format!(
                    "{:#x} has more than {u} bits",
                    e.0
                )));
            }
            if !ech.insert(to_bits(e)) {
                return Err(Error::InvalidSubspace(
                    "requested syndromes are linearly dependent".into(),
                ));
            }
            basis.push(e);
        }
        for k in 0..u {
            if basis.len() == u {
                break;
            }
            let e = GFuElem(1 << k);
            if ech.insert(to_bits(e)) {
                basis.push(e);
            }
        }
        Ok(SubspaceChoice { basis })
    }

    /// Parses comma-separated bit strings, leftmost character = coordinate 0.
    pub fn parse(u: usize, spec: &str) -> Result<Self> {
        let mut leading = Vec::new();
        for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            leading.push(parse_gfu_bits(u, tok)?);
        }
        Self::with_leading(u, &leading)
    }

    pub fn basis(&self) -> &[GFuElem] {
        &self.basis
    }

    pub fn u(&self) -> usize {
        self.basis.len()
    }

    /// Basis of A_{u-i}.
    pub fn subspace_for_level(&self, level: usize) -> &[GFuElem] {
        &self.basis[..self.basis.len() - level]
    }
}

pub fn parse_gfu_bits(u: usize, tok: &str) -> Result<GFuElem> {
    if tok.len() != u || !tok.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::InvalidSubspace(format!(
            "{tok:?} is not a {u}-character 0/1 string"
        )));
    }
    let v = tok
        .chars()
        .enumerate()
        .fold(0u16, |acc, (k, c)| acc | ((c == '1') as u16) << k);
    Ok(GFuElem(v))
}

pub fn format_gfu_bits(u: usize, e: GFuElem) -> String {
    (0..u).map(|k| if e.bit(k) { '1' } else { '0' }).collect()
}

/// Span of `basis` as a membership table over all 2^u elements.
pub fn span_table(u: usize, basis: &[GFuElem]) -> Vec<bool> {
    let mut table = vec![false; 1 << u];
    table[0] = true;
    for mask in 1u32..(1 << basis.len()) {
        let v = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| (mask >> j) & 1 == 1)
            .fold(0u16, |acc, (_, e)| acc ^ e.0);
        table[v as usize] = true;
    }
    table
}

/// A binary linear code in the family, described by its parity-check matrix.
#[derive(Clone)]
pub struct LinearCode {
    ctx: Arc<FieldContext>,
    parity: ParityCheckMatrix,
    level: usize,
    chain_basis: Vec<GFuElem>,
    extended: bool,
    adjoined_reps: Vec<BitVec>,
    column_syndromes: Vec<u64>,
    generator: OnceLock<Vec<BitVec>>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearCode[{}, {}] m={} level={}{}",
            self.length(),
            self.dimension(),
            self.ctx.m(),
            self.level,
            if self.extended { " extended" } else { "" }
        )
    }
}

impl LinearCode {
    fn new(
        ctx: Arc<FieldContext>,
        parity: ParityCheckMatrix,
        level: usize,
        chain_basis: Vec<GFuElem>,
        extended: bool,
        adjoined_reps: Vec<BitVec>,
    ) -> Result<Self> {
        if !parity.is_full_rank() {
            return Err(Error::Internal("parity-check rows are dependent".into()));
        }
        if parity.row_count() > MAX_SYNDROME_BITS {
            return Err(Error::TooLarge {
                what: "syndrome width",
                size: parity.row_count(),
                limit: MAX_SYNDROME_BITS,
            });
        }
        let column_syndromes = (0..parity.length()).map(|j| parity.column(j)).collect();
        Ok(LinearCode {
            ctx,
            parity,
            level,
            chain_basis,
            extended,
            adjoined_reps,
            column_syndromes,
            generator: OnceLock::new(),
        })
    }

    /// A code over the same field and labels with a different parity-check
    /// matrix; used for derived codes and negative tests.
    pub fn with_parity(&self, parity: ParityCheckMatrix) -> Result<Self> {
        LinearCode::new(
            self.ctx.clone(),
            parity,
            self.level,
            self.chain_basis.clone(),
            self.extended,
            self.adjoined_reps.clone(),
        )
    }

    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn length(&self) -> usize {
        self.parity.length()
    }

    pub fn dimension(&self) -> usize {
        self.length() - self.parity.row_count()
    }

    /// Number of syndrome bits, n - k.
    pub fn redundancy(&self) -> usize {
        self.parity.row_count()
    }

    pub fn parity(&self) -> &ParityCheckMatrix {
        &self.parity
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// The full ordered basis of F_2^u the chain was built from.
    pub fn chain_basis(&self) -> &[GFuElem] {
        &self.chain_basis
    }

    /// Basis of A_{u-i}.
    pub fn subspace_basis(&self) -> &[GFuElem] {
        &self.chain_basis[..self.chain_basis.len() - self.level]
    }

    pub fn subspace_table(&self) -> Vec<bool> {
        span_table(self.ctx.u(), self.subspace_basis())
    }

    /// v_1, …, v_{u-i} (unextended coordinates).
    pub fn adjoined_reps(&self) -> &[BitVec] {
        &self.adjoined_reps
    }

    /// Syndrome of the unit vector e_j.
    pub fn column_syndromes(&self) -> &[u64] {
        &self.column_syndromes
    }

    pub fn syndrome(&self, v: &BitVec) -> Result<u64> {
        self.check_len(v)?;
        Ok(v.iter_ones().fold(0, |acc, j| acc ^ self.column_syndromes[j]))
    }

    /// Syndrome of the vector with the given support.
    pub fn syndrome_of_support(&self, support: &[usize]) -> u64 {
        support.iter().fold(0, |acc, &j| acc ^ self.column_syndromes[j])
    }

    fn check_len(&self, v: &BitVec) -> Result<()> {
        if v.len() != self.length() {
            return Err(Error::LengthMismatch {
                expected: self.length(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `parity · v^T = 0`.
    pub fn is_member(&self, v: &BitVec) -> Result<bool> {
        Ok(self.syndrome(v)? == 0)
    }

    /// Membership by the field description: `H_m v^T = 0` and `S(v) ∈ A_{u-i}`
    /// (plus even weight for extended codes). Independent of the parity rows.
    pub fn satisfies_field_criterion(&self, v: &BitVec) -> Result<bool> {
        self.check_len(v)?;
        let base = if self.extended {
            if v.weight() % 2 == 1 {
                return Ok(false);
            }
            v.puncture_first()
        } else {
            v.clone()
        };
        if self.ctx.hamming_syndrome(&base)? != 0 {
            return Ok(false);
        }
        let s = self.ctx.s_sum(&base)?;
        Ok(self.subspace_table()[s.0 as usize])
    }

    /// Basis of the code itself (kernel of the parity rows), cached.
    pub fn generator_basis(&self) -> &[BitVec] {
        self.generator
            .get_or_init(|| bits::kernel(self.parity.rows(), self.length()))
    }
}

/// C^(u), with parity-check matrix P_m: H_m stacked on the reduced rows of E_m.
pub fn build_cu(ctx: Arc<FieldContext>) -> Result<LinearCode> {
    let h = build_hamming_parity(&ctx);
    let e = build_power_parity(&ctx);
    let e_reduced = Echelon::new(e.rows().to_vec());
    let mut rows = h.rows().to_vec();
    rows.extend(e_reduced.rows().iter().cloned());
    let parity = ParityCheckMatrix::from_rows(ctx.n(), rows)?;
    let u = ctx.u();
    LinearCode::new(
        ctx,
        parity,
        u,
        SubspaceChoice::standard(u).basis,
        false,
        Vec::new(),
    )
}

/// For each nonzero value of S, the lexicographically smallest weight-3
/// Hamming codeword (as a sorted support triple) with that value.
fn smallest_triples(ctx: &FieldContext) -> Vec<Option<[usize; 3]>> {
    let n = ctx.n();
    let mut best: Vec<Option<[usize; 3]>> = vec![None; ctx.q()];
    for i in 0..n {
        for j in (i + 1)..n {
            let k = ctx
                .log_alpha(ctx.alpha_pow(i) ^ ctx.alpha_pow(j))
                .expect("distinct powers");
            if k <= j {
                continue;
            }
            let s = ctx.s_term(i) + ctx.s_term(j) + ctx.s_term(k);
            let slot = &mut best[s.0 as usize];
            if slot.is_none() {
                *slot = Some([i, j, k]);
            }
        }
    }
    best
}

/// The chain C^(u) ⊂ C^(u-1) ⊂ … ⊂ C^(0), smallest code first.
///
/// Each C^(i) = ⟨C^(u), v_1, …, v_{u-i}⟩ where v_j is the lexicographically
/// smallest weight-3 word with S(v_j) = b_j. Parity rows are adapted to the
/// chain: every code's rows are H_m followed by one row per level, and the
/// rows of C^(i) are a prefix of the rows of C^(i+1), so syndromes of a
/// coarser code are truncations of syndromes of a finer one.
pub fn build_chain(ctx: Arc<FieldContext>, choice: &SubspaceChoice) -> Result<Vec<LinearCode>> {
    let u = ctx.u();
    if choice.u() != u {
        return Err(Error::InvalidSubspace(format!(
            "basis has {} vectors, field needs {u}",
            choice.u()
        )));
    }
    let n = ctx.n();
    let triples = smallest_triples(&ctx);
    let mut reps = Vec::with_capacity(u);
    for &b in choice.basis() {
        let t = triples[b.0 as usize]
            .ok_or_else(|| Error::Internal(format!("no weight-3 word with S = {b:?}")))?;
        reps.push(BitVec::from_support(n, &t));
    }

    let cu = build_cu(ctx.clone())?;
    let pm_rows = cu.parity.rows().to_vec();

    let mut rows = build_hamming_parity(&ctx).rows().to_vec();
    let mut current = Echelon::new(rows.clone());
    let mut levels: Vec<Vec<BitVec>> = vec![rows.clone()];
    for t in 1..=u {
        // K_t = rowspace(P_m) ∩ {p : p·v_j = 0, j = 1..u-t}
        let constraints: Vec<BitVec> = pm_rows
            .iter()
            .map(|p| {
                let sup: Vec<usize> = (0..u - t).filter(|&j| p.dot(&reps[j])).collect();
                BitVec::from_support(u - t, &sup)
            })
            .collect();
        // Coefficient vectors c with Σ c_k (p_k · v_j) = 0 for all j.
        let coeff_space = bits::kernel(&transpose(&constraints, u - t), pm_rows.len());
        let new_row = coeff_space
            .iter()
            .map(|c| {
                c.iter_ones().fold(BitVec::zeros(n), |mut acc, k| {
                    acc.xor_assign(&pm_rows[k]);
                    acc
                })
            })
            .find(|row| !current.contains(row))
            .ok_or_else(|| Error::Internal(format!("no new parity row at level {t}")))?;
        current.insert(new_row.clone());
        rows.push(new_row);
        levels.push(rows.clone());
    }

    let mut chain = Vec::with_capacity(u + 1);
    for level in (0..=u).rev() {
        let parity = ParityCheckMatrix::from_rows(n, levels[level].clone())?;
        let code = LinearCode::new(
            ctx.clone(),
            parity,
            level,
            choice.basis().to_vec(),
            false,
            reps[..u - level].to_vec(),
        )?;
        if code.dimension() != n - ctx.m() - level {
            return Err(Error::Internal(format!(
                "level {level} has dimension {}",
                code.dimension()
            )));
        }
        chain.push(code);
    }
    Ok(chain)
}

/// Transposes a list of length-`cols` rows into `cols` rows of length `rows.len()`.
fn transpose(rows: &[BitVec], cols: usize) -> Vec<BitVec> {
    (0..cols)
        .map(|c| {
            let sup: Vec<usize> = (0..rows.len()).filter(|&r| rows[r].get(c)).collect();
            BitVec::from_support(rows.len(), &sup)
        })
        .collect()
}

/// C^(i) from the chain for `choice`.
pub fn build_level(ctx: Arc<FieldContext>, choice: &SubspaceChoice, level: usize) -> Result<LinearCode> {
    let u = ctx.u();
    if level > u {
        return Err(Error::InvalidLevel { level, u });
    }
    let mut chain = build_chain(ctx, choice)?;
    Ok(chain.swap_remove(u - level))
}

/// C^*: the zero column is prepended (coordinate 0) and the all-one row appended.
pub fn extend_code(code: &LinearCode) -> Result<LinearCode> {
    if code.extended {
        return Err(Error::AlreadyExtended);
    }
    let len = code.length() + 1;
    let mut rows: Vec<BitVec> = code.parity.rows().iter().map(|r| r.prepend(false)).collect();
    rows.push(BitVec::ones(len));
    let parity = ParityCheckMatrix::from_rows(len, rows)?;
    LinearCode::new(
        code.ctx.clone(),
        parity,
        code.level,
        code.chain_basis.clone(),
        true,
        code.adjoined_reps.clone(),
    )
}

/// Gaussian binomial coefficient: the number of `k`-dimensional subspaces of F_2^`u`.
pub fn gaussian_binomial(u: usize, k: usize) -> u64 {
    if k > u {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for j in 0..k {
        num *= (1u128 << u) - (1u128 << j);
        den *= (1u128 << k) - (1u128 << j);
    }
    (num / den) as u64
}

/// Number of codes C^(i) for a fixed u: one per (u-i)-dimensional subspace A_{u-i}.
pub fn count_codes_at_level(u: usize, level: usize) -> u64 {
    gaussian_binomial(u, level)
}

/// ∏_{j=0}^{u-1} (2^{u-j} - 1): the number of distinct full nested chains.
pub fn count_chain_families(u: usize) -> u64 {
    (0..u).map(|j| (1u64 << (u - j)) - 1).product()
}

/// Enumerates every nonzero codeword of the dual (the row space of the
/// parity matrix) in Gray-code order.
pub fn dual_enumerate(code: &LinearCode) -> Result<Vec<BitVec>> {
    const LIMIT: usize = 24;
    let rows = code.parity.rows();
    if rows.len() > LIMIT {
        return Err(Error::TooLarge {
            what: "dual dimension",
            size: rows.len(),
            limit: LIMIT,
        });
    }
    let total = 1usize << rows.len();
    let mut out = Vec::with_capacity(total);
    let mut cur = BitVec::zeros(code.length());
    out.push(cur.clone());
    for step in 1..total {
        let flip = step.trailing_zeros() as usize;
        cur.xor_assign(&rows[flip]);
        out.push(cur.clone());
    }
    Ok(out)
}

/// Nonzero weights of the dual code with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSpectrum {
    pub weights: BTreeMap<usize, u64>,
}

impl DualSpectrum {
    pub fn from_words(words: &[BitVec]) -> Self {
        let mut weights = BTreeMap::new();
        for w in words {
            let wt = w.weight();
            if wt > 0 {
                *weights.entry(wt).or_insert(0) += 1;
            }
        }
        DualSpectrum { weights }
    }

    /// The external distance s: number of distinct nonzero dual weights.
    pub fn external_distance(&self) -> usize {
        self.weights.len()
    }

    pub fn distinct_weights(&self) -> Vec<usize> {
        self.weights.keys().copied().collect()
    }
}

pub fn dual_spectrum(code: &LinearCode) -> Result<DualSpectrum> {
    Ok(DualSpectrum::from_words(&dual_enumerate(code)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicityVerdict {
    Cyclic,
    NotCyclic,
    /// Computed for a code the construction does not claim to be cyclic.
    NotClaimed {
        cyclic: bool,
    },
}

/// The code is cyclic iff the cyclic shift of every parity row stays in the
/// row space of the parity matrix.
pub fn verify_cyclicity(code: &LinearCode) -> CyclicityVerdict {
    let cyclic = !code.extended && {
        let ech = Echelon::new(code.parity.rows().to_vec());
        code.parity.rows().iter().all(|r| ech.contains(&r.cyclic_shift()))
    };
    if code.extended || code.level != code.ctx.u() {
        CyclicityVerdict::NotClaimed { cyclic }
    } else if cyclic {
        CyclicityVerdict::Cyclic
    } else {
        CyclicityVerdict::NotCyclic
    }
}

/// All `dim`-dimensional subspaces of F_2^u, each as a sorted member list.
/// Exhaustive; intended for u ≤ 4.
pub fn enumerate_subspaces(u: usize, dim: usize) -> Vec<Vec<u16>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let q = 1u16 << u;
    fn rec(
        u: usize,
        dim: usize,
        q: u16,
        start: u16,
        basis: &mut Vec<GFuElem>,
        seen: &mut HashSet<Vec<u16>>,
        out: &mut Vec<Vec<u16>>,
    ) {
        if basis.len() == dim {
            let table = span_table(u, basis);
            let members: Vec<u16> = (0..q).filter(|&x| table[x as usize]).collect();
            if members.len() == 1 << dim && seen.insert(members.clone()) {
                out.push(members);
            }
            return;
        }
        for x in start..q {
            basis.push(GFuElem(x));
            rec(u, dim, q, x + 1, basis, seen, out);
            basis.pop();
        }
    }
    rec(u, dim, q, 1, &mut Vec::new(), &mut seen, &mut out);
    out.sort();
    out
}

/// Counts complete flags {0} ⊂ A_1 ⊂ … ⊂ A_u = F_2^u by exhaustive search.
pub fn count_flags_exhaustive(u: usize) -> u64 {
    let by_dim: Vec<Vec<Vec<u16>>> = (0..=u).map(|d| enumerate_subspaces(u, d)).collect();
    let subset = |a: &[u16], b: &[u16]| a.iter().all(|x| b.binary_search(x).is_ok());
    // paths[d][s] = number of flags ending at subspace s of dimension d
    let mut paths: Vec<u64> = vec![1; by_dim[0].len()];
    for d in 1..=u {
        paths = by_dim[d]
            .iter()
            .map(|s| {
                by_dim[d - 1]
                    .iter()
                    .zip(&paths)
                    .filter(|(t, _)| subset(t, s))
                    .map(|(_, &c)| c)
                    .sum()
            })
            .collect();
    }
    paths.iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimPolys {
    pub m: String,
    pub u: String,
}

/// JSON description from which a code can be rebuilt exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub m: usize,
    pub u: usize,
    pub i: usize,
    pub extended: bool,
    /// Basis of A_{u-i}, as 0/1 strings (leftmost = coordinate 0).
    pub subspace_basis: Vec<String>,
    /// The full ordered chain basis the parity rows were derived from.
    pub chain_basis: Vec<String>,
    /// Supports of v_1, …, v_{u-i} (unextended coordinates).
    pub adjoined_reps: Vec<Vec<usize>>,
    pub prim_polys: PrimPolys,
    pub length: usize,
    pub dimension: usize,
}

impl CodeDescriptor {
    pub fn of(code: &LinearCode) -> Self {
        let u = code.ctx.u();
        CodeDescriptor {
            m: code.ctx.m(),
            u,
            i: code.level,
            extended: code.extended,
            subspace_basis: code
                .subspace_basis()
                .iter()
                .map(|&e| format_gfu_bits(u, e))
                .collect(),
            chain_basis: code.chain_basis.iter().map(|&e| format_gfu_bits(u, e)).collect(),
            adjoined_reps: code.adjoined_reps.iter().map(BitVec::support).collect(),
            prim_polys: PrimPolys {
                m: format!("{:#x}", code.ctx.prim_poly_m()),
                u: format!("{:#x}", code.ctx.prim_poly_u()),
            },
            length: code.length(),
            dimension: code.dimension(),
        }
    }

    /// Rebuilds the code and checks it against the recorded parameters.
    pub fn rebuild(&self) -> Result<LinearCode> {
        let cfg = FieldConfig {
            prim_poly_m: Some(crate::field::parse_hex_poly(&self.prim_polys.m)?),
            prim_poly_u: Some(crate::field::parse_hex_poly(&self.prim_polys.u)?),
        };
        let ctx = Arc::new(FieldContext::with_config(self.m, &cfg)?);
        let basis: Vec<GFuElem> = self
            .chain_basis
            .iter()
            .map(|s| parse_gfu_bits(self.u, s))
            .collect::<Result<_>>()?;
        let choice = SubspaceChoice::with_leading(self.u, &basis)?;
        let mut code = build_level(ctx, &choice, self.i)?;
        if self.extended {
            code = extend_code(&code)?;
        }
        let reps: Vec<Vec<usize>> = code.adjoined_reps.iter().map(BitVec::support).collect();
        if reps != self.adjoined_reps || code.length() != self.length || code.dimension() != self.dimension {
            return Err(Error::Parse("descriptor does not match the rebuilt code".into()));
        }
        Ok(code)
    }
}
