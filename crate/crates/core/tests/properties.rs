use std::sync::Arc;

use proptest::prelude::*;

use crcode::bits::BitVec;
use crcode::codes::{build_chain, dual_enumerate, extend_code, LinearCode, SubspaceChoice};
use crcode::field::{FieldContext, GFuElem};
use crcode::graphs::{parse_graph6, to_graph6, Graph};
use crcode::regularity::CosetTransform;
use crcode::transitivity::{matrix_to_permutation, translation_permutation, Mat2};

fn chain4() -> Vec<LinearCode> {
    let ctx = Arc::new(FieldContext::new(4).unwrap());
    build_chain(ctx, &SubspaceChoice::standard(2)).unwrap()
}

fn codeword(code: &LinearCode, mask: u64) -> BitVec {
    let mut v = BitVec::zeros(code.length());
    for (k, b) in code.generator_basis().iter().enumerate() {
        if mask >> k & 1 == 1 {
            v.xor_assign(b);
        }
    }
    v
}

proptest! {
    #[test]
    fn nonsingular_matrices_preserve_the_smallest_code(a in 0u16..4, a1 in 0u16..4, b in 0u16..4, b1 in 0u16..4, mask: u64) {
        let ch = chain4();
        let code = &ch[0];
        let phi = Mat2::new(a, a1, b, b1);
        match matrix_to_permutation(&phi, code.ctx()) {
            Ok(p) => prop_assert!(code.is_member(&p.apply(&codeword(code, mask))).unwrap()),
            Err(_) => prop_assert_eq!(phi.det(code.ctx()), GFuElem(0)),
        }
    }

    #[test]
    fn translations_preserve_extended_codes(level in 0usize..3, w in 0u32..16, mask: u64) {
        let ch = chain4();
        let star = extend_code(&ch[2 - level]).unwrap();
        let p = translation_permutation(w, star.ctx());
        prop_assert!(star.is_member(&p.apply(&codeword(&star, mask))).unwrap());
    }

    #[test]
    fn coset_distributions_sum_to_code_size(bits in proptest::collection::vec(any::<bool>(), 15)) {
        let ch = chain4();
        let code = &ch[1];
        let sup: Vec<usize> = bits.iter().enumerate().filter(|(_, &x)| x).map(|(j, _)| j).collect();
        let v = BitVec::from_support(15, &sup);
        let tr = CosetTransform::new(15, dual_enumerate(code).unwrap()).unwrap();
        let d = tr.distribution(&v).unwrap();
        let total: num_bigint::BigUint = d.iter().sum();
        prop_assert_eq!(total, num_bigint::BigUint::from(1u32 << code.dimension()));
    }

    #[test]
    fn graph6_round_trip(n in 0usize..80, seed: u64) {
        let mut state = seed | 1;
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                if state % 3 == 0 {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        prop_assert_eq!(parse_graph6(&to_graph6(&g).unwrap()).unwrap(), g);
    }
}
