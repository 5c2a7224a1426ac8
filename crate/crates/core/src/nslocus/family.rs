use serde::{Deserialize, Serialize};

use super::{constant_matrix, locus_ring, parse_generators, reference_triple, relations, symbolic_tau};
use super::{Flattening, REFERENCE_GENERATORS};
use crate::error::Result;
use crate::exactmath::int;
use crate::polyring::{buchberger, Ideal, MonomialOrder, Poly, PolyRing};

const T_VARS: usize = 10;
const PARAMS_PER_CLASS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub pair_limit: usize,
    pub pairs_reduced: usize,
    pub pairs_skipped: usize,
    pub complete: bool,
    pub basis_len: usize,
    /// Homogenized basis elements whose leading term involves some `t_i`.
    pub leading_terms_with_t: usize,
    pub holds: bool,
    /// The homogenized partial basis specialized at the reference triple.
    pub specialized: Vec<String>,
    /// Every specialized element lies in the ideal of the printed generators.
    pub contained: bool,
}

/// `t_0..t_9, e_0..e_11, f_0..f_11, g_0..g_11`, ordered by degree in the
/// `t_i` first, then by total degree, then reverse lexicographically.
pub fn family_ring() -> PolyRing {
    let mut names: Vec<String> = (0..T_VARS).map(|k| format!("t_{k}")).collect();
    for p in ["e", "f", "g"] {
        names.extend((0..PARAMS_PER_CLASS).map(|k| format!("{p}_{k}")));
    }
    let weights = (0..names.len()).map(|k| u32::from(k < T_VARS)).collect();
    PolyRing::new(names, MonomialOrder::Weighted { weights })
}

/// The nine relations of the family over the parameter space: `A_i` and
/// `B_i` generic, `C_i` fixed to the blocks of the reference triple, `τ`
/// filled column by column from `t_1`.
pub fn family_relations(ring: &PolyRing) -> Vec<Poly> {
    let t = symbolic_tau(ring, 3, Flattening::ColumnMajor);
    let triple = reference_triple();
    let mut out = Vec::with_capacity(9);
    for (class, e) in triple.iter().enumerate() {
        let base = T_VARS + class * PARAMS_PER_CLASS;
        let p = |k: usize| ring.var(base + k);
        let zero = ring.constant(int(0));
        let upper = [(0, 1, 0), (0, 2, 1), (1, 2, 2)];
        let mut a = vec![vec![zero.clone(); 3]; 3];
        for (i, j, k) in upper {
            a[i][j] = p(k);
            a[j][i] = p(k).neg();
        }
        let b: Vec<Vec<Poly>> = (0..3).map(|i| (0..3).map(|j| p(3 + 3 * i + j)).collect()).collect();
        let c = constant_matrix(ring, &e.c_matrix());
        out.extend(relations(ring, &a, &b, &c, &t));
    }
    out
}

/// Parameter values `(e, f, g)` of the reference triple: for each class the
/// strict upper triangle of `A` followed by `B` row by row.
pub fn reference_parameters() -> Vec<i64> {
    reference_triple().iter().flat_map(|e| [e.a(), e.b()].concat()).collect()
}

/// Runs the pair-limited Buchberger algorithm on the family relations,
/// homogenizes the partial basis with `t_0` (parameters weigh 0) and checks
/// that every leading term involves a `t`-variable. Also specializes at the
/// reference triple and checks that the result lies in the ideal of the
/// printed generators.
pub fn family_certificate(pair_limit: usize) -> Result<FamilyCertificate> {
    let ring = family_ring();
    let gb = buchberger(&ring, &family_relations(&ring), Some(pair_limit));
    let weights: Vec<u32> = (0..ring.nvars()).map(|k| u32::from(k < T_VARS)).collect();
    let homogeneous: Vec<Poly> = gb.polys.iter().map(|f| ring.homogenize(f, 0, &weights)).collect();
    let with_t = homogeneous
        .iter()
        .filter(|f| !f.is_zero() && (0..T_VARS).any(|v| f.lm().exp(v) > 0))
        .count();

    let values: Vec<_> = reference_parameters()
        .into_iter()
        .enumerate()
        .map(|(k, v)| (T_VARS + k, int(v)))
        .collect();
    let target = locus_ring(3);
    let map: Vec<Option<usize>> = (0..ring.nvars()).map(|k| (k < T_VARS).then_some(k)).collect();
    let specialized = homogeneous
        .iter()
        .map(|f| ring.transfer(&ring.substitute(f, &values), &target, &map))
        .collect::<Result<Vec<_>>>()?;
    let printed = Ideal::new(target.clone(), parse_generators(&target, REFERENCE_GENERATORS)?);
    let contained = specialized.iter().all(|f| printed.contains(f));

    Ok(FamilyCertificate {
        pair_limit,
        pairs_reduced: gb.pairs_reduced,
        pairs_skipped: gb.pairs_skipped,
        complete: gb.complete,
        basis_len: homogeneous.len(),
        leading_terms_with_t: with_t,
        holds: with_t == homogeneous.len(),
        specialized: specialized.iter().map(|f| target.format(f)).collect(),
        contained,
    })
}
