//! Generic two-sided modules over a mesh algebra, with minimal covers and
//! syzygies computed at the matrix level.
//!
//! This is the validation path for the twist recursion: starting from the
//! regular bimodule, iterate projective cover and kernel, and compare the
//! third and sixth kernels against the predicted twisted regular
//! bimodules. Everything here is dense exact linear algebra on spaces of
//! dimension (dim A)^2 at most, so it is reserved for small algebras.

use crate::algebra::{AlgebraAutomorphism, MeshAlgebra};
use crate::field::Field;
use crate::linalg::{Matrix, RowSpace};

/// A bimodule given by the action matrices of the algebra generators
/// (idempotents then arrows, in quiver order) on both sides.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    pub dim: usize,
    pub left: Vec<Matrix<F>>,
    pub right: Vec<Matrix<F>>,
}

fn generator_count<F: Field>(alg: &MeshAlgebra<F>) -> usize {
    alg.n_vertices() + alg.quiver.n_arrows()
}

fn generator_elem<F: Field>(alg: &MeshAlgebra<F>, g: usize) -> usize {
    if g < alg.n_vertices() {
        alg.idempotent_index(g)
    } else {
        alg.arrow_index(g - alg.n_vertices())
    }
}

impl<F: Field> Bimodule<F> {
    /// The regular bimodule, with the right action twisted through `phi`
    /// (pass the identity for the plain regular bimodule).
    pub fn twisted_regular(alg: &MeshAlgebra<F>, phi: &AlgebraAutomorphism<F>) -> Self {
        let f = &alg.field;
        let n = alg.dim();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for g in 0..generator_count(alg) {
            let ge = generator_elem(alg, g);
            let mut lm = Matrix::zeros(f.clone(), n, n);
            let mut rm = Matrix::zeros(f.clone(), n, n);
            let phi_g = phi.apply(alg, &[(ge, f.one())]);
            for b in 0..n {
                for (r, c) in alg.mul_basis(ge, b) {
                    lm.set(r, b, c);
                }
                for (r, c) in alg.mul(&[(b, f.one())], &phi_g) {
                    rm.set(r, b, c);
                }
            }
            left.push(lm);
            right.push(rm);
        }
        Bimodule { dim: n, left, right }
    }

    pub fn regular(alg: &MeshAlgebra<F>) -> Self {
        Bimodule::twisted_regular(alg, &AlgebraAutomorphism::identity(alg))
    }

    fn left_gen(&self, alg: &MeshAlgebra<F>, arrow: usize) -> &Matrix<F> {
        &self.left[alg.n_vertices() + arrow]
    }

    fn right_gen(&self, alg: &MeshAlgebra<F>, arrow: usize) -> &Matrix<F> {
        &self.right[alg.n_vertices() + arrow]
    }

    /// Applies the left action of a basis class (by its path).
    pub fn act_left_basis(&self, alg: &MeshAlgebra<F>, b: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = v.to_vec();
        for &a in alg.basis[b].path.iter().rev() {
            v = self.left_gen(alg, a).apply(&v);
        }
        self.left[alg.basis[b].src].apply(&v)
    }

    /// Applies the right action of a basis class.
    pub fn act_right_basis(&self, alg: &MeshAlgebra<F>, b: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = v.to_vec();
        for &a in &alg.basis[b].path {
            v = self.right_gen(alg, a).apply(&v);
        }
        self.right[alg.basis[b].tgt].apply(&v)
    }
}

/// One step of the minimal resolution: the cover's summand list (vertex
/// pairs, with multiplicity) and the kernel with its induced actions.
pub struct SyzygyStep<F: Field> {
    pub cover_summands: Vec<(usize, usize)>,
    pub kernel: Bimodule<F>,
}

/// Projective cover and kernel of a bimodule.
pub fn syzygy_step<F: Field>(alg: &MeshAlgebra<F>, m: &Bimodule<F>) -> SyzygyStep<F> {
    let f = &alg.field;
    let nv = alg.n_vertices();
    let na = alg.quiver.n_arrows();

    // radical subspace: images of all one-sided arrow actions
    let mut rad = RowSpace::new(f.clone(), m.dim);
    for a in 0..na {
        for k in 0..m.dim {
            let mut unit = vec![f.zero(); m.dim];
            unit[k] = f.one();
            rad.insert(&m.left_gen(alg, a).apply(&unit));
            let mut unit2 = vec![f.zero(); m.dim];
            unit2[k] = f.one();
            rad.insert(&m.right_gen(alg, a).apply(&unit2));
        }
    }

    // generator lifts, block by block
    let mut lifts: Vec<(usize, usize, Vec<F::Elem>)> = Vec::new();
    let mut span = rad.clone();
    for i in 0..nv {
        for j in 0..nv {
            for k in 0..m.dim {
                let mut unit = vec![f.zero(); m.dim];
                unit[k] = f.one();
                let blocked = m.left[i].apply(&m.right[j].apply(&unit));
                if span.insert(&blocked) {
                    lifts.push((i, j, blocked));
                }
            }
        }
    }

    // cover map matrix: columns indexed by (lift, u in A e_i, w in e_j A)
    let mut cols: Vec<Vec<F::Elem>> = Vec::new();
    let mut col_meta: Vec<(usize, usize, usize)> = Vec::new(); // (lift, u, w)
    for (lidx, (i, j, g)) in lifts.iter().enumerate() {
        for &u in &alg.basis_into(*i) {
            let gu = m.act_left_basis(alg, u, g);
            for &w in &alg.basis_from(*j) {
                cols.push(m.act_right_basis(alg, w, &gu));
                col_meta.push((lidx, u, w));
            }
        }
    }
    let pdim = cols.len();
    let mut rows = vec![vec![f.zero(); pdim]; m.dim];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            rows[i][j] = v.clone();
        }
    }
    let cover_map = Matrix::from_rows(f.clone(), pdim, rows);
    let kernel_vecs = cover_map.kernel_basis();
    let kdim = kernel_vecs.len();

    // actions of generators on the cover, in (lift, u, w) coordinates
    let col_index: std::collections::HashMap<(usize, usize, usize), usize> = col_meta
        .iter()
        .enumerate()
        .map(|(c, &meta)| (meta, c))
        .collect();
    let act_on_cover = |gen: usize, leftside: bool| -> Matrix<F> {
        let ge = generator_elem(alg, gen);
        let mut mat = Matrix::zeros(f.clone(), pdim, pdim);
        for (c, &(lidx, u, w)) in col_meta.iter().enumerate() {
            if leftside {
                for (gu, cu) in alg.mul_basis(ge, u) {
                    let tgt = col_index[&(lidx, gu, w)];
                    let v = f.add(mat.get(tgt, c), &cu);
                    mat.set(tgt, c, v);
                }
            } else {
                for (gw, cw) in alg.mul_basis(w, ge) {
                    let tgt = col_index[&(lidx, u, gw)];
                    let v = f.add(mat.get(tgt, c), &cw);
                    mat.set(tgt, c, v);
                }
            }
        }
        mat
    };

    // kernel basis as a matrix (pdim x kdim) for restricting actions
    let mut kmat_rows = vec![vec![f.zero(); kdim]; pdim];
    for (j, k) in kernel_vecs.iter().enumerate() {
        for (i, v) in k.iter().enumerate() {
            kmat_rows[i][j] = v.clone();
        }
    }
    let kmat = Matrix::from_rows(f.clone(), kdim, kmat_rows);
    let restrict = |big: &Matrix<F>| -> Matrix<F> {
        let mut out = Matrix::zeros(f.clone(), kdim, kdim);
        for (j, k) in kernel_vecs.iter().enumerate() {
            let img = big.apply(k);
            let coords = kmat
                .solve(&img)
                .expect("kernel is invariant under the actions");
            for (i, v) in coords.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    };

    let mut left = Vec::new();
    let mut right = Vec::new();
    for g in 0..generator_count(alg) {
        left.push(restrict(&act_on_cover(g, true)));
        right.push(restrict(&act_on_cover(g, false)));
    }
    SyzygyStep {
        cover_summands: lifts.iter().map(|&(i, j, _)| (i, j)).collect(),
        kernel: Bimodule {
            dim: kdim,
            left,
            right,
        },
    }
}

/// Solutions `v` of the intertwining relations `phi(g) . v = v . g` for
/// all generators: the candidates for images of the unit under a bimodule
/// map from the phi-right-twisted regular bimodule into `m`.
pub fn twisted_generator_space<F: Field>(
    alg: &MeshAlgebra<F>,
    m: &Bimodule<F>,
    phi: &AlgebraAutomorphism<F>,
) -> Vec<Vec<F::Elem>> {
    let f = &alg.field;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for g in 0..generator_count(alg) {
        let ge = generator_elem(alg, g);
        let phi_g = phi.apply(alg, &[(ge, f.one())]);
        // left action of phi(g), column by column
        let mut lm = Matrix::zeros(f.clone(), m.dim, m.dim);
        for (b, c) in &phi_g {
            for col in 0..m.dim {
                let mut unit = vec![f.zero(); m.dim];
                unit[col] = f.one();
                let img = m.act_left_basis(alg, *b, &unit);
                for (r, v) in img.into_iter().enumerate() {
                    if !f.is_zero(&v) {
                        let acc = f.add(lm.get(r, col), &f.mul(c, &v));
                        lm.set(r, col, acc);
                    }
                }
            }
        }
        for r in 0..m.dim {
            let mut row = Vec::with_capacity(m.dim);
            for cidx in 0..m.dim {
                row.push(f.sub(lm.get(r, cidx), m.right[g].get(r, cidx)));
            }
            rows.push(row);
        }
    }
    let mat = Matrix::from_rows(f.clone(), m.dim, rows);
    mat.kernel_basis()
}

/// Does `v` generate `m` as a two-sided module?
pub fn generates<F: Field>(alg: &MeshAlgebra<F>, m: &Bimodule<F>, v: &[F::Elem]) -> bool {
    let f = &alg.field;
    let mut span = RowSpace::new(f.clone(), m.dim);
    for u in 0..alg.dim() {
        let uv = m.act_left_basis(alg, u, v);
        if uv.iter().all(|x| f.is_zero(x)) {
            continue;
        }
        for w in 0..alg.dim() {
            let uvw = m.act_right_basis(alg, w, &uv);
            span.insert(&uvw);
            if span.rank() == m.dim {
                return true;
            }
        }
    }
    span.rank() == m.dim
}

/// Searches for an isomorphism from `twisted_regular(alg, phi)` to `m`:
/// an intertwining vector that generates. Returns the generator.
pub fn find_twisted_generator<F: Field>(
    alg: &MeshAlgebra<F>,
    m: &Bimodule<F>,
    phi: &AlgebraAutomorphism<F>,
) -> Option<Vec<F::Elem>> {
    if m.dim != alg.dim() {
        return None;
    }
    let f = &alg.field;
    let space = twisted_generator_space(alg, m, phi);
    for v in &space {
        if generates(alg, m, v) {
            return Some(v.clone());
        }
    }
    // combination search along a generic line
    let tries = if f.characteristic() == 0 {
        3 * space.len() + 3
    } else {
        (f.characteristic() as usize).saturating_mul(space.len()).min(200) + 2
    };
    for t in 2..2 + tries as i64 {
        let mut v = vec![f.zero(); m.dim];
        let mut pw = f.one();
        for s in &space {
            for (x, sv) in v.iter_mut().zip(s) {
                *x = f.add(x, &f.mul(&pw, sv));
            }
            pw = f.mul(&pw, &f.from_i64(t));
        }
        if generates(alg, m, &v) {
            return Some(v);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::quiver::{build_dynkin, build_quotient_quiver, DynkinFamily, QuotientSpec, RhoKind};

    fn a2() -> MeshAlgebra<Rationals> {
        let d = build_dynkin(DynkinFamily::A, 2).unwrap();
        let spec = QuotientSpec::new(d, 1, RhoKind::None).unwrap();
        let q = build_quotient_quiver(&spec).unwrap();
        crate::algebra::mesh_algebra(&q, Rationals, 3).unwrap()
    }

    #[test]
    fn regular_bimodule_covers_match_resolution_terms() {
        let alg = a2();
        let reg = Bimodule::regular(&alg);
        let step1 = syzygy_step(&alg, &reg);
        // P_0: one summand (i, i) per vertex
        let mut s = step1.cover_summands.clone();
        s.sort_unstable();
        assert_eq!(s, vec![(0, 0), (1, 1)]);
        assert_eq!(step1.kernel.dim, 8 - 4);

        let step2 = syzygy_step(&alg, &step1.kernel);
        // P_1: one summand per arrow
        let mut s = step2.cover_summands.clone();
        s.sort_unstable();
        assert_eq!(s, vec![(0, 1), (1, 0)]);

        let step3 = syzygy_step(&alg, &step2.kernel);
        // P_2: (tau i, i) per vertex; tau = id here
        let mut s = step3.cover_summands.clone();
        s.sort_unstable();
        assert_eq!(s, vec![(0, 0), (1, 1)]);
        assert_eq!(step3.kernel.dim, 4);
    }

    #[test]
    fn third_syzygy_is_twisted_regular() {
        let alg = a2();
        let data = crate::resolution::twist_data(&alg).unwrap();
        let reg = Bimodule::regular(&alg);
        let s1 = syzygy_step(&alg, &reg);
        let s2 = syzygy_step(&alg, &s1.kernel);
        let s3 = syzygy_step(&alg, &s2.kernel);
        // the third syzygy is the regular bimodule right-twisted through
        // the inverse of the xi-extracted automorphism
        assert!(find_twisted_generator(&alg, &s3.kernel, &data.mu.inverse()).is_some());
        // and not isomorphic to the untwisted regular bimodule
        let id = AlgebraAutomorphism::identity(&alg);
        assert!(find_twisted_generator(&alg, &s3.kernel, &id).is_none());
    }

    #[test]
    fn double_cover_syzygies_pin_the_composition_order() {
        // the 4-cycle double cover separates mu from mu^{-1} (they differ
        // by a translation twist), so it fixes the composition order: the
        // third syzygy of the regular bimodule is the mu^{-1} right twist,
        // not the mu-twist, and the sixth is the mu^{-2}-twist
        let d = build_dynkin(DynkinFamily::A, 2).unwrap();
        let spec = QuotientSpec::new(d, 2, RhoKind::None).unwrap();
        let q = build_quotient_quiver(&spec).unwrap();
        let alg = crate::algebra::mesh_algebra(&q, Rationals, 3).unwrap();
        let data = crate::resolution::twist_data(&alg).unwrap();
        let mu_inv = data.mu.inverse();
        let mut m = Bimodule::regular(&alg);
        for _ in 0..3 {
            m = syzygy_step(&alg, &m).kernel;
        }
        assert!(find_twisted_generator(&alg, &m, &mu_inv).is_some());
        assert!(find_twisted_generator(&alg, &m, &data.mu).is_none());
        for _ in 0..3 {
            m = syzygy_step(&alg, &m).kernel;
        }
        assert!(find_twisted_generator(&alg, &m, &mu_inv.compose(&mu_inv)).is_some());
    }

    #[test]
    fn double_cover_dual_bimodule_cosyzygy_exponent() {
        // the dual bimodule first appears among the cosyzygies of the
        // regular bimodule at 3d = 9; equivalently the regular bimodule
        // appears among the syzygies of the dual at step 9. At steps 3 and
        // 6 the dual's syzygy is still a nontrivial twist.
        let d = build_dynkin(DynkinFamily::A, 2).unwrap();
        let spec = QuotientSpec::new(d, 2, RhoKind::None).unwrap();
        let q = build_quotient_quiver(&spec).unwrap();
        let alg = crate::algebra::mesh_algebra(&q, Rationals, 3).unwrap();
        let data = crate::resolution::twist_data(&alg).unwrap();
        let id = AlgebraAutomorphism::identity(&alg);
        let mut m = Bimodule::twisted_regular(&alg, &data.nu.inverse());
        for step in 1..=3 {
            for _ in 0..3 {
                m = syzygy_step(&alg, &m).kernel;
            }
            let regular_now = find_twisted_generator(&alg, &m, &id).is_some();
            assert_eq!(regular_now, step == 3, "wrong at 3d = {}", 3 * step);
        }
    }
}
