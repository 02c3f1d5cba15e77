//! Arithmetic in GF(2^u) and in GF(2^m) = GF(2^u)[α] for m = 2u.
//!
//! Elements of GF(2^m) are bit-encoded polynomials in α (bit `k` is the
//! coefficient of α^k), where α is the root of the configured primitive
//! polynomial of degree m. Elements of the subfield GF(2^u) are bit-encoded
//! polynomials modulo a primitive polynomial of degree u; they are embedded
//! into GF(2^m) by sending the generator of GF(2^u) to a root of the same
//! polynomial among the powers of β = α^(2^u+1).
//!
//! Every element γ of GF(2^m) decomposes uniquely as γ = γ₁ + γ₂α with
//! γ₁, γ₂ in the subfield; [`QuadPair`] holds that pair.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};

/// Bit-encoded element of GF(2^m).
pub type FieldElement = u32;

/// Default primitive polynomials indexed by degree.
pub fn default_primitive_poly(degree: usize) -> Option<u32> {
    Some(match degree {
        2 => 0x7,
        3 => 0xb,
        4 => 0x13,
        5 => 0x25,
        6 => 0x43,
        7 => 0x89,
        8 => 0x11d,
        10 => 0x409,
        12 => 0x1053,
        _ => return None,
    })
}

/// Element of GF(2^u), polynomial basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct GFuElem(pub u16);

impl GFuElem {
    pub const ZERO: GFuElem = GFuElem(0);
    pub const ONE: GFuElem = GFuElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Coordinate `k` of the element viewed as a vector of F_2^u.
    pub fn bit(self, k: usize) -> bool {
        (self.0 >> k) & 1 == 1
    }
}

// Addition in characteristic 2 is XOR.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for GFuElem {
    type Output = GFuElem;
    fn add(self, rhs: GFuElem) -> GFuElem {
        GFuElem(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for GFuElem {
    fn add_assign(&mut self, rhs: GFuElem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Debug for GFuElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GFu({:#x})", self.0)
    }
}

/// The pair (γ₁, γ₂) standing for γ₁ + γ₂α.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug, Serialize, Deserialize)]
pub struct QuadPair {
    pub g1: GFuElem,
    pub g2: GFuElem,
}

impl QuadPair {
    pub fn new(g1: GFuElem, g2: GFuElem) -> Self {
        QuadPair { g1, g2 }
    }

    pub fn is_zero(self) -> bool {
        self.g1.is_zero() && self.g2.is_zero()
    }

    fn index(self, u: usize) -> usize {
        self.g1.0 as usize | (self.g2.0 as usize) << u
    }
}

impl Add for QuadPair {
    type Output = QuadPair;
    fn add(self, rhs: QuadPair) -> QuadPair {
        QuadPair::new(self.g1 + rhs.g1, self.g2 + rhs.g2)
    }
}

/// Overrides for the primitive polynomials, read from a small TOML file:
///
/// ```toml
/// prim_poly_m = "0x43"
/// prim_poly_u = "0xb"
/// ```
///
/// Values are hex-encoded coefficient masks including the leading term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldConfig {
    pub prim_poly_m: Option<u32>,
    pub prim_poly_u: Option<u32>,
}

#[derive(Deserialize)]
struct RawFieldConfig {
    prim_poly_m: Option<String>,
    prim_poly_u: Option<String>,
}

pub fn parse_hex_poly(s: &str) -> Result<u32> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    u32::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("bad hex polynomial {s:?}: {e}")))
}

impl FieldConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawFieldConfig =
            toml::from_str(text).map_err(|e| Error::Parse(format!("field config: {e}")))?;
        Ok(FieldConfig {
            prim_poly_m: raw.prim_poly_m.as_deref().map(parse_hex_poly).transpose()?,
            prim_poly_u: raw.prim_poly_u.as_deref().map(parse_hex_poly).transpose()?,
        })
    }
}

/// Tables for GF(2^m) viewed as a quadratic extension of GF(2^u).
///
/// Immutable after construction.
#[derive(Clone)]
pub struct FieldContext {
    m: usize,
    u: usize,
    prim_poly_m: u32,
    prim_poly_u: u32,
    exp_m: Vec<FieldElement>,
    log_m: Vec<u32>,
    exp_u: Vec<u16>,
    log_u: Vec<u32>,
    /// Image in GF(2^m) of each GF(2^u) element.
    embed: Vec<FieldElement>,
    /// Decomposition of every element of GF(2^m), indexed by its bit encoding.
    decomp: Vec<QuadPair>,
    /// Inverse of `decomp`, indexed by `g1 | g2 << u`.
    compose: Vec<FieldElement>,
    /// γ_{i1}γ_{i2} for each position i (the element α^i).
    s_terms: Vec<GFuElem>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("m", &self.m)
            .field("prim_poly_m", &format_args!("{:#x}", self.prim_poly_m))
            .field("prim_poly_u", &format_args!("{:#x}", self.prim_poly_u))
            .finish()
    }
}

fn degree(poly: u32) -> Option<usize> {
    (poly != 0).then(|| 31 - poly.leading_zeros() as usize)
}

/// Builds exp/log tables, checking that x has order exactly 2^degree - 1.
fn exp_log_tables(poly: u32, deg: usize) -> Result<(Vec<u32>, Vec<u32>)> {
    if degree(poly) != Some(deg) || poly & 1 == 0 {
        return Err(Error::NotPrimitive { poly, degree: deg });
    }
    let size = 1usize << deg;
    let order = size - 1;
    let mut exp = Vec::with_capacity(order);
    let mut log = vec![u32::MAX; size];
    let mut x: u32 = 1;
    for i in 0..order {
        if log[x as usize] != u32::MAX {
            return Err(Error::NotPrimitive { poly, degree: deg });
        }
        exp.push(x);
        log[x as usize] = i as u32;
        x <<= 1;
        if x & (1 << deg) != 0 {
            x ^= poly;
        }
    }
    if x != 1 {
        return Err(Error::NotPrimitive { poly, degree: deg });
    }
    Ok((exp, log))
}

impl FieldContext {
    /// Field context with the built-in primitive polynomials.
    pub fn new(m: usize) -> Result<Self> {
        Self::with_config(m, &FieldConfig::default())
    }

    pub fn with_config(m: usize, config: &FieldConfig) -> Result<Self> {
        if !m.is_multiple_of(2) || !(4..=12).contains(&m) {
            return Err(Error::InvalidDegree(m));
        }
        let u = m / 2;
        let prim_poly_m = config
            .prim_poly_m
            .or_else(|| default_primitive_poly(m))
            .ok_or(Error::InvalidDegree(m))?;
        let prim_poly_u = config
            .prim_poly_u
            .or_else(|| default_primitive_poly(u))
            .ok_or(Error::InvalidDegree(m))?;
        let (exp_m, log_m) = exp_log_tables(prim_poly_m, m)?;
        let (exp_u, log_u) = exp_log_tables(prim_poly_u, u)?;
        let exp_u: Vec<u16> = exp_u.into_iter().map(|x| x as u16).collect();

        let n = (1usize << m) - 1;
        let q = 1usize << u;
        let r = q + 1;

        let mut ctx = FieldContext {
            m,
            u,
            prim_poly_m,
            prim_poly_u,
            exp_m,
            log_m,
            exp_u,
            log_u,
            embed: Vec::new(),
            decomp: Vec::new(),
            compose: Vec::new(),
            s_terms: Vec::new(),
        };

        // Find the smallest e with prim_poly_u(β^e) = 0; then ζ^k ↦ β^(e k)
        // is a field embedding of GF(2^u) into GF(2^m).
        let e = (1..q)
            .find(|&e| {
                let root = ctx.exp_m[(r * e) % n];
                ctx.eval_poly_m(prim_poly_u, root) == 0
            })
            .ok_or_else(|| Error::Internal("no root of the subfield polynomial".into()))?;
        let mut embed = vec![0; q];
        for k in 0..q - 1 {
            embed[ctx.exp_u[k] as usize] = ctx.exp_m[(r * e * k) % n];
        }
        ctx.embed = embed;

        let size = 1usize << m;
        let mut decomp = vec![QuadPair::default(); size];
        let mut compose = vec![0; size];
        let mut seen = vec![false; size];
        for g2 in 0..q {
            for g1 in 0..q {
                let pair = QuadPair::new(GFuElem(g1 as u16), GFuElem(g2 as u16));
                let x = ctx.embed[g1] ^ ctx.mul_alpha(ctx.embed[g2]);
                if seen[x as usize] {
                    return Err(Error::Internal("quadratic decomposition is not bijective".into()));
                }
                seen[x as usize] = true;
                decomp[x as usize] = pair;
                compose[pair.index(u)] = x;
            }
        }
        ctx.decomp = decomp;
        ctx.compose = compose;
        ctx.s_terms = (0..n)
            .map(|i| {
                let p = ctx.decomp[ctx.exp_m[i] as usize];
                ctx.mul_u(p.g1, p.g2)
            })
            .collect();
        Ok(ctx)
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn u(&self) -> usize {
        self.u
    }
    /// q = 2^u.
    pub fn q(&self) -> usize {
        1 << self.u
    }
    /// r = 2^u + 1.
    pub fn r(&self) -> usize {
        self.q() + 1
    }
    /// r̄ = 2^u - 1.
    pub fn rbar(&self) -> usize {
        self.q() - 1
    }
    /// n = 2^m - 1, the number of nonzero field elements and the code length.
    pub fn n(&self) -> usize {
        (1 << self.m) - 1
    }
    pub fn prim_poly_m(&self) -> u32 {
        self.prim_poly_m
    }
    pub fn prim_poly_u(&self) -> u32 {
        self.prim_poly_u
    }

    /// α^i.
    pub fn alpha_pow(&self, i: usize) -> FieldElement {
        self.exp_m[i % self.n()]
    }

    /// Discrete log base α; `None` for zero.
    pub fn log_alpha(&self, x: FieldElement) -> Option<usize> {
        let l = self.log_m[x as usize];
        (l != u32::MAX).then_some(l as usize)
    }

    /// β = α^r, a primitive element of the subfield (as an element of GF(2^m)).
    pub fn beta(&self) -> FieldElement {
        self.alpha_pow(self.r())
    }

    fn mul_alpha(&self, x: FieldElement) -> FieldElement {
        let mut y = x << 1;
        if y & (1 << self.m) != 0 {
            y ^= self.prim_poly_m;
        }
        y
    }

    pub fn mul_m(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.n();
        self.exp_m[(self.log_m[a as usize] as usize + self.log_m[b as usize] as usize) % n]
    }

    /// x^(2^k).
    pub fn frobenius_m(&self, x: FieldElement, k: usize) -> FieldElement {
        if x == 0 {
            return 0;
        }
        let n = self.n();
        let l = self.log_m[x as usize] as usize;
        self.exp_m[(l * (1usize << (k % self.m))) % n]
    }

    pub fn pow_m(&self, x: FieldElement, e: usize) -> FieldElement {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let n = self.n();
        self.exp_m[(self.log_m[x as usize] as usize * (e % n)) % n]
    }

    fn eval_poly_m(&self, poly: u32, x: FieldElement) -> FieldElement {
        let deg = degree(poly).unwrap_or(0);
        (0..=deg).rev().fold(0, |acc, k| {
            let acc = self.mul_m(acc, x);
            if (poly >> k) & 1 == 1 {
                acc ^ 1
            } else {
                acc
            }
        })
    }

    pub fn mul_u(&self, a: GFuElem, b: GFuElem) -> GFuElem {
        if a.is_zero() || b.is_zero() {
            return GFuElem::ZERO;
        }
        let order = self.rbar();
        GFuElem(self.exp_u[(self.log_u[a.0 as usize] as usize + self.log_u[b.0 as usize] as usize) % order])
    }

    pub fn inv_u(&self, a: GFuElem) -> Option<GFuElem> {
        if a.is_zero() {
            return None;
        }
        let order = self.rbar();
        Some(GFuElem(
            self.exp_u[(order - self.log_u[a.0 as usize] as usize) % order],
        ))
    }

    /// ζ^k for the generator ζ of GF(2^u) (root of `prim_poly_u`).
    pub fn zeta_pow(&self, k: usize) -> GFuElem {
        GFuElem(self.exp_u[k % self.rbar()])
    }

    pub fn log_zeta(&self, a: GFuElem) -> Option<usize> {
        let l = self.log_u[a.0 as usize];
        (l != u32::MAX).then_some(l as usize)
    }

    /// a^(2^k) in GF(2^u).
    pub fn frobenius_u(&self, a: GFuElem, k: usize) -> GFuElem {
        if a.is_zero() {
            return a;
        }
        let order = self.rbar();
        let l = self.log_u[a.0 as usize] as usize;
        GFuElem(self.exp_u[(l * (1usize << (k % self.u))) % order])
    }

    /// All elements of GF(2^u) in encoding order.
    pub fn subfield_elements(&self) -> impl Iterator<Item = GFuElem> {
        (0..self.q() as u16).map(GFuElem)
    }

    /// Image of a subfield element inside GF(2^m).
    pub fn embed(&self, a: GFuElem) -> FieldElement {
        self.embed[a.0 as usize]
    }

    /// Inverse of [`embed`](Self::embed); `None` if `x` is outside the subfield.
    pub fn restrict(&self, x: FieldElement) -> Option<GFuElem> {
        let p = self.decomp[x as usize];
        p.g2.is_zero().then_some(p.g1)
    }

    /// γ ↦ (γ₁, γ₂) with γ = γ₁ + γ₂α.
    pub fn quad_decompose(&self, x: FieldElement) -> QuadPair {
        self.decomp[x as usize]
    }

    /// (γ₁, γ₂) ↦ γ₁ + γ₂α.
    pub fn quad_compose(&self, p: QuadPair) -> FieldElement {
        self.compose[p.index(self.u)]
    }

    /// Decomposition of the element labelling position `i`, namely α^i.
    pub fn position_pair(&self, i: usize) -> QuadPair {
        self.decomp[self.alpha_pow(i) as usize]
    }

    /// Position labelled by the nonzero pair `p`.
    pub fn pair_position(&self, p: QuadPair) -> Option<usize> {
        self.log_alpha(self.quad_compose(p))
    }

    /// Det_u(a, b) = a₁b₂ + b₁a₂.
    pub fn det_u(&self, a: QuadPair, b: QuadPair) -> GFuElem {
        self.mul_u(a.g1, b.g2) + self.mul_u(b.g1, a.g2)
    }

    /// γ_{i1}γ_{i2} for position `i`.
    pub fn s_term(&self, i: usize) -> GFuElem {
        self.s_terms[i]
    }

    /// S(v): the sum of γ_{i1}γ_{i2} over the support of `v`.
    pub fn s_sum(&self, v: &BitVec) -> Result<GFuElem> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: v.len(),
            });
        }
        Ok(v.iter_ones().fold(GFuElem::ZERO, |acc, i| acc + self.s_terms[i]))
    }

    /// H_m v^T as a field element: the sum of α^i over the support of `v`.
    pub fn hamming_syndrome(&self, v: &BitVec) -> Result<FieldElement> {
        if v.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: v.len(),
            });
        }
        Ok(v.iter_ones().fold(0, |acc, i| acc ^ self.exp_m[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parameters_for_m4() {
        let ctx = FieldContext::new(4).unwrap();
        assert_eq!((ctx.u(), ctx.q(), ctx.r(), ctx.rbar(), ctx.n()), (2, 4, 5, 3, 15));
        assert_eq!(ctx.r() * ctx.rbar(), ctx.n());
    }

    #[test]
    fn beta_has_order_rbar() {
        for m in [4, 6, 8, 10, 12] {
            let ctx = FieldContext::new(m).unwrap();
            let beta = ctx.beta();
            assert_ne!(beta, 1);
            assert_eq!(ctx.pow_m(beta, ctx.rbar()), 1);
            for d in 1..ctx.rbar() {
                assert_ne!(ctx.pow_m(beta, d), 1, "m={m} order of beta divides {d}");
            }
            // β lies in the subfield
            assert!(ctx.restrict(beta).is_some());
        }
    }

    #[test]
    fn rejects_bad_degrees_and_polys() {
        for m in [2, 3, 5, 14, 0] {
            assert!(matches!(FieldContext::new(m), Err(Error::InvalidDegree(_))));
        }
        // x^4 + x^3 + x^2 + x + 1 is irreducible but not primitive.
        let cfg = FieldConfig {
            prim_poly_m: Some(0x1f),
            prim_poly_u: None,
        };
        assert!(matches!(
            FieldContext::with_config(4, &cfg),
            Err(Error::NotPrimitive { .. })
        ));
        let cfg = FieldConfig {
            prim_poly_m: None,
            prim_poly_u: Some(0x5),
        };
        assert!(matches!(
            FieldContext::with_config(4, &cfg),
            Err(Error::NotPrimitive { .. })
        ));
    }

    #[test]
    fn alternate_primitive_polynomials() {
        // x^6 + x^5 + 1 and x^3 + x^2 + 1 are primitive.
        let cfg = FieldConfig::from_toml_str("prim_poly_m = \"0x61\"\nprim_poly_u = \"0xd\"\n").unwrap();
        let ctx = FieldContext::with_config(6, &cfg).unwrap();
        assert_eq!(ctx.prim_poly_m(), 0x61);
        for x in 0..64u32 {
            assert_eq!(ctx.quad_compose(ctx.quad_decompose(x)), x);
        }
    }

    #[test]
    fn decomposition_round_trip_m6() {
        let ctx = FieldContext::new(6).unwrap();
        for i in 0..63 {
            let x = ctx.alpha_pow(i);
            assert_eq!(ctx.quad_compose(ctx.quad_decompose(x)), x);
        }
        assert!(ctx.quad_decompose(0).is_zero());
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let ctx = FieldContext::new(8).unwrap();
        for a in ctx.subfield_elements() {
            for b in ctx.subfield_elements() {
                assert_eq!(ctx.embed(a + b), ctx.embed(a) ^ ctx.embed(b));
                assert_eq!(ctx.embed(ctx.mul_u(a, b)), ctx.mul_m(ctx.embed(a), ctx.embed(b)));
            }
        }
    }

    #[test]
    fn decomposition_is_subfield_linear() {
        let ctx = FieldContext::new(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let x: u32 = rng.gen_range(0..64);
            let y: u32 = rng.gen_range(0..64);
            let c = GFuElem(rng.gen_range(0..8));
            let px = ctx.quad_decompose(x);
            let py = ctx.quad_decompose(y);
            assert_eq!(ctx.quad_decompose(x ^ y), px + py);
            let cx = ctx.quad_decompose(ctx.mul_m(ctx.embed(c), x));
            assert_eq!(cx, QuadPair::new(ctx.mul_u(c, px.g1), ctx.mul_u(c, px.g2)));
        }
    }

    /// 2x2 determinant computed from the compose table by brute force over
    /// subfield coordinates, independent of `det_u`.
    fn det_oracle(ctx: &FieldContext, a: FieldElement, b: FieldElement) -> GFuElem {
        let q = ctx.q() as u16;
        let mut coords = [(GFuElem::ZERO, GFuElem::ZERO); 2];
        for (slot, x) in [a, b].into_iter().enumerate() {
            'search: for g2 in 0..q {
                for g1 in 0..q {
                    let p = QuadPair::new(GFuElem(g1), GFuElem(g2));
                    if ctx.quad_compose(p) == x {
                        coords[slot] = (GFuElem(g1), GFuElem(g2));
                        break 'search;
                    }
                }
            }
        }
        let ((a1, a2), (b1, b2)) = (coords[0], coords[1]);
        // multiply inside GF(2^m) via the embedding
        let prod = |s: GFuElem, t: GFuElem| ctx.restrict(ctx.mul_m(ctx.embed(s), ctx.embed(t))).unwrap();
        prod(a1, b2) + prod(b1, a2)
    }

    #[test]
    fn det_u_matches_oracle_exhaustively_m4() {
        let ctx = FieldContext::new(4).unwrap();
        for a in 0..16u32 {
            for b in 0..16u32 {
                let d = ctx.det_u(ctx.quad_decompose(a), ctx.quad_decompose(b));
                assert_eq!(d, det_oracle(&ctx, a, b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn det_u_alternating_and_bilinear_m4() {
        let ctx = FieldContext::new(4).unwrap();
        for a in 0..16u32 {
            let pa = ctx.quad_decompose(a);
            assert!(ctx.det_u(pa, pa).is_zero());
            for b in 0..16u32 {
                let pb = ctx.quad_decompose(b);
                for c in 0..16u32 {
                    let pc = ctx.quad_decompose(c);
                    assert_eq!(ctx.det_u(pa + pb, pc), ctx.det_u(pa, pc) + ctx.det_u(pb, pc));
                }
            }
        }
    }

    #[test]
    fn det_u_is_multiplicative_under_linear_maps() {
        let ctx = FieldContext::new(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = ctx.q() as u16;
        let apply = |g: [GFuElem; 4], p: QuadPair| {
            QuadPair::new(
                ctx.mul_u(g[0], p.g1) + ctx.mul_u(g[1], p.g2),
                ctx.mul_u(g[2], p.g1) + ctx.mul_u(g[3], p.g2),
            )
        };
        for _ in 0..100 {
            let g = [0; 4].map(|_| GFuElem(rng.gen_range(0..q)));
            let det_g = ctx.mul_u(g[0], g[3]) + ctx.mul_u(g[1], g[2]);
            let a = ctx.quad_decompose(rng.gen_range(0..64));
            let b = ctx.quad_decompose(rng.gen_range(0..64));
            assert_eq!(
                ctx.det_u(apply(g, a), apply(g, b)),
                ctx.mul_u(det_g, ctx.det_u(a, b))
            );
        }
    }

    #[test]
    fn det_u_value_counts() {
        // For nonzero γ: each nonzero value of the subfield is hit by exactly
        // 2^u choices of γ', and zero by the 2^u - 2 multiples βʲγ other than γ
        // (plus γ itself and 0).
        for m in [4, 6] {
            let ctx = FieldContext::new(m).unwrap();
            let q = ctx.q();
            for x in 1..=ctx.n() as u32 {
                let px = ctx.quad_decompose(x);
                let mut counts = vec![0usize; q];
                let mut zero_nonmultiples = 0;
                for y in 0..=ctx.n() as u32 {
                    let d = ctx.det_u(px, ctx.quad_decompose(y));
                    counts[d.0 as usize] += 1;
                    if d.is_zero() && y != 0 && y != x {
                        zero_nonmultiples += 1;
                    }
                }
                assert!(counts[1..].iter().all(|&c| c == q));
                assert_eq!(zero_nonmultiples, q - 2);
            }
        }
    }

    #[test]
    fn frobenius_consistency() {
        let ctx = FieldContext::new(8).unwrap();
        let alpha_q = ctx.pow_m(ctx.alpha_pow(1), ctx.q());
        for x in 0..256u32 {
            let p = ctx.quad_decompose(x);
            let lhs = ctx.pow_m(x, ctx.q());
            let rhs = ctx.embed(p.g1) ^ ctx.mul_m(ctx.embed(p.g2), alpha_q);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn s_sum_edge_cases() {
        let ctx = FieldContext::new(4).unwrap();
        assert!(ctx.s_sum(&BitVec::zeros(15)).unwrap().is_zero());
        assert!(matches!(
            ctx.s_sum(&BitVec::zeros(16)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn s_sum_of_hamming_triple_is_det() {
        let ctx = FieldContext::new(6).unwrap();
        for i in 0..63 {
            for j in (i + 1)..63 {
                let k = ctx.log_alpha(ctx.alpha_pow(i) ^ ctx.alpha_pow(j)).unwrap();
                let v = BitVec::from_support(63, &[i, j, k]);
                let expected = ctx.det_u(ctx.position_pair(i), ctx.position_pair(j));
                assert_eq!(ctx.s_sum(&v).unwrap(), expected);
            }
        }
    }

    #[test]
    fn s_sum_matches_term_by_term() {
        let ctx = FieldContext::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let mut sup: Vec<usize> = Vec::new();
            while sup.len() < 5 {
                let p = rng.gen_range(0..15);
                if !sup.contains(&p) {
                    sup.push(p);
                }
            }
            let v = BitVec::from_support(15, &sup);
            let mut acc = GFuElem::ZERO;
            for &p in &sup {
                let pair = ctx.quad_decompose(ctx.alpha_pow(p));
                acc += ctx.mul_u(pair.g1, pair.g2);
            }
            assert_eq!(ctx.s_sum(&v).unwrap(), acc);
        }
    }
}
