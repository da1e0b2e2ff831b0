//! Factor a nonscalar invertible `A` as `A = BC` with the characteristic
//! polynomials of `B` and `C` fully prescribed.
//!
//! The construction is inductive. For heads `beta, gamma` and a vector `x`
//! that is not an eigenvector, the basis `x, (A - beta gamma I) x, ...` puts
//! `A` in the shape `[[beta gamma, u], [e1, A1]]`. Then
//! `B = [[beta, 0], [e1 / gamma, B1]]` and `C = [[gamma, u / beta], [0, C1]]`
//! multiply to `A` exactly when `B1 C1 = A1 - e1 u / (beta gamma)`, which is
//! the same problem one size down. The only obstruction is that smaller
//! problem being scalar of size at least 2; then another `x` or another
//! head pairing is tried.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix, Vector};

/// Eigenvalue lists for the two factors, with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumPrescription<F: Field> {
    pub betas: Vec<F::Elem>,
    pub gammas: Vec<F::Elem>,
}

impl<F: Field> SpectrumPrescription<F> {
    pub fn new(betas: Vec<F::Elem>, gammas: Vec<F::Elem>) -> Self {
        SpectrumPrescription { betas, gammas }
    }

    /// Route tag recording the prescription and the search effort.
    pub fn tag(&self, field: &F, backtracks: usize) -> String {
        let list = |v: &[F::Elem]| {
            v.iter()
                .map(|e| field.token(e))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "spectrum_split(betas=[{}],gammas=[{}],backtracks={})",
            list(&self.betas),
            list(&self.gammas),
            backtracks
        )
    }
}

/// Output of [`spectrum_split`]; `A = B C`, `B = W Bt W^-1`, `C = W Ct W^-1`
/// with `Bt` lower and `Ct` upper triangular.
#[derive(Clone, Debug)]
pub struct SplitFactors<F: Field> {
    pub b: Matrix<F>,
    pub c: Matrix<F>,
    pub basis: Matrix<F>,
    pub b_tri: Matrix<F>,
    pub c_tri: Matrix<F>,
    pub backtracks: usize,
}

/// Cap on subproblem attempts before giving up.
const SEARCH_BUDGET: usize = 20_000;

/// How many shears of the basis completion are tried per vector.
const SHEAR_COUNT: usize = 3;

/// Cap on the number of vectors tried at one level.
const CANDIDATE_CAP: usize = 4096;

pub fn spectrum_split<F: Field>(
    a: &Matrix<F>,
    p: &SpectrumPrescription<F>,
) -> Result<SplitFactors<F>> {
    let f = a.field().clone();
    let n = a.n();
    if p.betas.len() != n {
        return Err(Error::SizeMismatch(p.betas.len(), n));
    }
    if p.gammas.len() != n {
        return Err(Error::SizeMismatch(p.gammas.len(), n));
    }
    if n < 2 {
        return Err(Error::PreconditionViolated("size at least 2".into()));
    }
    if a.is_scalar() {
        return Err(Error::ScalarInput);
    }
    if p.betas.iter().chain(&p.gammas).any(|e| f.is_zero(e)) {
        return Err(Error::PreconditionViolated("prescribed eigenvalues must be nonzero".into()));
    }
    let det = a.det();
    if f.is_zero(&det) {
        return Err(Error::Singular);
    }
    let prescribed = p
        .betas
        .iter()
        .chain(&p.gammas)
        .fold(f.one(), |acc, e| f.mul(&acc, e));
    if prescribed != det {
        return Err(Error::DeterminantMismatch);
    }
    let mut search = Search {
        field: f.clone(),
        attempts: 0,
        backtracks: 0,
    };
    let (w, b_tri, c_tri) = search
        .solve(a, &p.betas, &p.gammas)
        .ok_or(Error::ConstructionFailed(search.backtracks))?;
    let winv = w.inverse()?;
    let b = &(&w * &b_tri) * &winv;
    let c = &(&w * &c_tri) * &winv;
    debug_assert_eq!(&b * &c, *a);
    Ok(SplitFactors {
        b,
        c,
        basis: w,
        b_tri,
        c_tri,
        backtracks: search.backtracks,
    })
}

struct Search<F: Field> {
    field: F,
    attempts: usize,
    backtracks: usize,
}

type Triple<F> = (Matrix<F>, Matrix<F>, Matrix<F>);

impl<F: Field> Search<F> {
    fn solve(&mut self, a: &Matrix<F>, betas: &[F::Elem], gammas: &[F::Elem]) -> Option<Triple<F>> {
        let f = self.field.clone();
        let m = a.n();
        if m == 1 {
            let (b, c) = (&betas[0], &gammas[0]);
            if f.mul(b, c) != *a.get(0, 0) {
                return None;
            }
            return Some((
                Matrix::identity(f.clone(), 1),
                Matrix::diag(f.clone(), core::slice::from_ref(b)),
                Matrix::diag(f, core::slice::from_ref(c)),
            ));
        }
        if a.is_scalar() {
            return None;
        }
        let mut tried: Vec<(F::Elem, F::Elem)> = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let heads = (betas[i].clone(), gammas[j].clone());
                if tried.contains(&heads) {
                    continue;
                }
                tried.push(heads);
                let rest_b: Vec<_> = remove(betas, i);
                let rest_g: Vec<_> = remove(gammas, j);
                // Shearing the completion vectors by multiples of x changes
                // the reduced problem; only matters from size 3 up.
                let shifts: Vec<F::Elem> = if m >= 3 {
                    f.scan().take(SHEAR_COUNT).collect()
                } else {
                    vec![f.zero()]
                };
                for x in candidates(&f, m) {
                    for t in &shifts {
                        if self.attempts >= SEARCH_BUDGET {
                            return None;
                        }
                        let Some(step) = self.step(a, &x, t, &betas[i], &gammas[j]) else {
                            continue;
                        };
                        self.attempts += 1;
                        if let Some(found) =
                            self.finish(step, &betas[i], &gammas[j], &rest_b, &rest_g)
                        {
                            return Some(found);
                        }
                        self.backtracks += 1;
                    }
                }
            }
        }
        None
    }

    /// Basis change for one reduction step; `None` if `x` is an eigenvector.
    fn step(
        &mut self,
        a: &Matrix<F>,
        x: &Vector<F>,
        shear: &F::Elem,
        beta: &F::Elem,
        gamma: &F::Elem,
    ) -> Option<Step<F>> {
        let f = &self.field;
        let m = a.n();
        let c = f.mul(beta, gamma);
        let ax = a.mul_vec(x);
        let y: Vector<F> = ax.iter().zip(x).map(|(s, t)| f.sub(s, &f.mul(&c, t))).collect();
        let mut span = Echelon::new(f.clone());
        span.insert(x);
        if !span.insert(&y) {
            return None;
        }
        let mut cols = vec![x.clone(), y];
        for k in 0..m {
            let mut e = vec![f.zero(); m];
            e[k] = f.one();
            if span.insert(&e) {
                let w = e.iter().zip(x).map(|(s, t)| f.add(s, &f.mul(shear, t))).collect();
                cols.push(w);
            }
        }
        let s = Matrix::from_columns(f.clone(), &cols).ok()?;
        let a_new = &s.inverse().ok()? * &(a * &s);
        let u: Vector<F> = (1..m).map(|j| a_new.get(0, j).clone()).collect();
        let v: Vector<F> = (1..m).map(|i| a_new.get(i, 0).clone()).collect();
        let cinv = f.inv(&c)?;
        let mut reduced = a_new.principal_block(1, m - 1);
        for r in 0..m - 1 {
            for t in 0..m - 1 {
                let corr = f.mul(&f.mul(&v[r], &u[t]), &cinv);
                let val = f.sub(reduced.get(r, t), &corr);
                reduced.set(r, t, val);
            }
        }
        if m > 2 && reduced.is_scalar() {
            self.backtracks += 1;
            return None;
        }
        Some(Step { s, u, v, reduced })
    }

    fn finish(
        &mut self,
        step: Step<F>,
        beta: &F::Elem,
        gamma: &F::Elem,
        rest_b: &[F::Elem],
        rest_g: &[F::Elem],
    ) -> Option<Triple<F>> {
        let f = self.field.clone();
        let (ws, bs, cs) = self.solve(&step.reduced, rest_b, rest_g)?;
        let m = step.s.n();
        let wsinv = ws.inverse().ok()?;
        // v and u expressed in the sub-basis
        let v2 = wsinv.mul_vec(&step.v);
        let u2: Vector<F> = (0..m - 1)
            .map(|t| {
                (0..m - 1).fold(f.zero(), |acc, r| f.add(&acc, &f.mul(&step.u[r], ws.get(r, t))))
            })
            .collect();
        let ginv = f.inv(gamma)?;
        let binv = f.inv(beta)?;
        let mut bt = Matrix::zero(f.clone(), m);
        let mut ct = Matrix::zero(f.clone(), m);
        bt.set(0, 0, beta.clone());
        ct.set(0, 0, gamma.clone());
        for k in 1..m {
            bt.set(k, 0, f.mul(&v2[k - 1], &ginv));
            ct.set(0, k, f.mul(&u2[k - 1], &binv));
            for l in 1..m {
                bt.set(k, l, bs.get(k - 1, l - 1).clone());
                ct.set(k, l, cs.get(k - 1, l - 1).clone());
            }
        }
        let one = Matrix::identity(f.clone(), 1);
        let w = &step.s * &Matrix::block_diag(f, &[&one, &ws]);
        Some((w, bt, ct))
    }
}

struct Step<F: Field> {
    s: Matrix<F>,
    u: Vector<F>,
    v: Vector<F>,
    reduced: Matrix<F>,
}

fn remove<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    v.iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, x)| x.clone())
        .collect()
}

/// `e_i`, then `e_i + e_j`, then `e_i + a e_j` for the field's scan order,
/// then (finite fields) every remaining vector, up to a cap.
fn candidates<F: Field>(f: &F, m: usize) -> impl Iterator<Item = Vector<F>> + '_ {
    let unit = move |i: usize| {
        let mut e = vec![f.zero(); m];
        e[i] = f.one();
        e
    };
    let singles = (0..m).map(unit);
    let pairs = (0..m).flat_map(move |i| {
        (0..m).filter(move |&j| j != i).map(move |j| {
            let mut e = unit(i);
            e[j] = f.one();
            e
        })
    });
    let scaled = (0..m).flat_map(move |i| {
        (0..m).filter(move |&j| j != i).flat_map(move |j| {
            f.scan()
                .take(64)
                .filter(|a| !f.is_zero(a) && !f.is_one(a))
                .map(move |a| {
                    let mut e = unit(i);
                    e[j] = a;
                    e
                })
        })
    });
    let everything = f
        .size()
        .filter(|&q| q.checked_pow(m as u32).is_some_and(|t| t <= CANDIDATE_CAP as u64))
        .into_iter()
        .flat_map(move |q| {
            let elems: Vec<F::Elem> = f.scan().collect();
            (1..q.pow(m as u32)).map(move |mut code| {
                let mut v = Vec::with_capacity(m);
                for _ in 0..m {
                    v.push(elems[(code % q) as usize].clone());
                    code /= q;
                }
                v
            })
        });
    singles
        .chain(pairs)
        .chain(scaled)
        .chain(everything)
        .take(CANDIDATE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GaloisField;
    use crate::linalg::{charpoly, poly};
    use proptest::prelude::*;

    fn gf(q: u64) -> GaloisField {
        GaloisField::of_order(q).unwrap()
    }

    fn check(a: &Matrix<GaloisField>, p: &SpectrumPrescription<GaloisField>) -> SplitFactors<GaloisField> {
        let f = a.field();
        let out = spectrum_split(a, p).unwrap();
        assert_eq!(&out.b * &out.c, *a);
        assert_eq!(charpoly(&out.b), poly::from_roots(f, &p.betas));
        assert_eq!(charpoly(&out.c), poly::from_roots(f, &p.gammas));
        let n = a.n();
        for i in 0..n {
            for j in i + 1..n {
                assert!(f.is_zero(out.b_tri.get(i, j)));
                assert!(f.is_zero(out.c_tri.get(j, i)));
            }
        }
        let winv = out.basis.inverse().unwrap();
        assert_eq!(&(&winv * &out.b) * &out.basis, out.b_tri);
        out
    }

    #[test]
    fn companion_with_prescribed_pairs() {
        let f = gf(7);
        let a = Matrix::from_i64(f.clone(), &[&[0, -1], &[1, 3]]);
        check(&a, &SpectrumPrescription::new(vec![4, 2], vec![4, 2]));
    }

    #[test]
    fn unipotent_into_unipotents() {
        let f = gf(7);
        let a = Matrix::jordan_block(f.clone(), 3, 1);
        check(&a, &SpectrumPrescription::new(vec![1; 3], vec![1; 3]));
    }

    #[test]
    fn diagonal_target() {
        let f = gf(7);
        let a = Matrix::diag(f.clone(), &[2, 4]);
        check(&a, &SpectrumPrescription::new(vec![1, 1], vec![2, 4]));
    }

    #[test]
    fn repeated_eigenvalue_targets() {
        // diag(a, a, b): the reduced problem is often scalar, forcing backtracks.
        let f = gf(5);
        let a = Matrix::diag(f.clone(), &[2, 2, 4]);
        check(&a, &SpectrumPrescription::new(vec![1, 1, 1], vec![1, 1, 1]));
        let a = Matrix::diag(f.clone(), &[3, 3, 3, 2]);
        // det = 54 = 4 mod 5
        check(&a, &SpectrumPrescription::new(vec![1, 1, 1, 4], vec![1, 1, 1, 1]));
    }

    #[test]
    fn errors() {
        let f = gf(7);
        let i = Matrix::identity(f.clone(), 2);
        let p = SpectrumPrescription::new(vec![1, 1], vec![1, 1]);
        assert_eq!(spectrum_split(&i, &p).unwrap_err(), Error::ScalarInput);
        let a = Matrix::from_i64(f.clone(), &[&[0, -1], &[1, 3]]);
        let bad = SpectrumPrescription::new(vec![2, 1], vec![1, 1]);
        assert_eq!(spectrum_split(&a, &bad).unwrap_err(), Error::DeterminantMismatch);
    }

    #[test]
    fn tag_lists_prescription() {
        let f = gf(7);
        let p = SpectrumPrescription::new(vec![4, 2], vec![1, 1]);
        assert_eq!(p.tag(&f, 0), "spectrum_split(betas=[4,2],gammas=[1,1],backtracks=0)");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_prescriptions(
            q in prop::sample::select(vec![5u64, 7, 9]),
            n in 2usize..=4,
            seed in prop::collection::vec(0u32..1000, 40),
        ) {
            let f = gf(q);
            let qq = f.order();
            let data: Vec<u32> = (0..n * n).map(|i| seed[i] % qq).collect();
            let a = Matrix::new(f.clone(), n, data).unwrap();
            let det = a.det();
            prop_assume!(!f.is_zero(&det) && !a.is_scalar());
            let nz = |s: u32| 1 + s % (qq - 1);
            let mut betas: Vec<u32> = (0..n).map(|i| nz(seed[20 + i])).collect();
            let gammas: Vec<u32> = (0..n).map(|i| nz(seed[30 + i])).collect();
            let partial = betas[1..].iter().chain(&gammas).fold(f.one(), |acc, e| f.mul(&acc, e));
            betas[0] = f.div(&det, &partial).unwrap();
            check(&a, &SpectrumPrescription::new(betas, gammas));
        }
    }
}
