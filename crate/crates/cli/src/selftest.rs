//! Built-in example suite run by `u2comm selftest`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use u2comm_core::factor_sln::{factor, jn1_factor, scalar_factor};
use u2comm_core::field::{Field, GaloisField, Rationals};
use u2comm_core::linalg::Matrix;
use u2comm_core::oracle::{bfs_lengths, derived_subgroup, enumerate_group, DEFAULT_BUDGET};
use u2comm_core::unipotent::{verify, Factorization};

pub struct Case {
    pub name: String,
    pub outcome: Result<String, String>,
}

fn gf(q: u64) -> GaloisField {
    GaloisField::of_order(q).expect("built-in field")
}

fn checked<F: Field>(
    cert: u2comm_core::Result<Factorization<F>>,
    want: &Matrix<F>,
    max: usize,
) -> Result<Factorization<F>, String> {
    let cert = cert.map_err(|e| e.to_string())?;
    let report = verify(&cert);
    if !report.passed() {
        return Err(report.to_string());
    }
    if &cert.target != want {
        return Err("target mismatch".into());
    }
    if cert.pair_count() > max {
        return Err(format!("{} pairs, expected at most {max}", cert.pair_count()));
    }
    Ok(cert)
}

fn pairs<F: Field>(cert: u2comm_core::Result<Factorization<F>>, want: &Matrix<F>, max: usize) -> Result<String, String> {
    checked(cert, want, max).map(|c| format!("{} pairs, route {}", c.pair_count(), c.route.join(" > ")))
}

fn case(name: &str, outcome: Result<String, String>) -> Case {
    Case {
        name: name.to_string(),
        outcome,
    }
}

/// Runs every example; `seed` drives the sampled cases.
pub fn run(seed: u64) -> Vec<Case> {
    let mut cases = Vec::new();

    let f7 = gf(7);
    let a = Matrix::from_i64(f7.clone(), &[&[0, 6], &[1, 3]]);
    let single = factor(&a).map_err(|e| e.to_string()).and_then(|c| {
        if c.route == ["trace(alpha=1)"] && c.pair_count() == 1 {
            Ok("1 pair, route trace(alpha=1)".to_string())
        } else {
            Err(format!("route {:?}", c.route))
        }
    });
    cases.push(case("GF(7) companion of trace 3 is one commutator", single));

    let f5 = gf(5);
    let minus = Matrix::scalar(f5.clone(), 2, 4);
    let exact = factor(&minus).map_err(|e| e.to_string()).and_then(|c| match c.pair_count() {
        3 => Ok("3 pairs".to_string()),
        k => Err(format!("{k} pairs")),
    });
    cases.push(case("-I over GF(5) uses three pairs", exact));

    let t = enumerate_group(&f5, 2, DEFAULT_BUDGET).expect("small group");
    let len = bfs_lengths(&t).get(t.id_of(&minus).expect("member"));
    cases.push(case(
        "BFS length of -I over GF(5) is 3",
        if len == Some(3) { Ok("3".into()) } else { Err(format!("{len:?}")) },
    ));

    let f3 = gf(3);
    let t3 = enumerate_group(&f3, 2, DEFAULT_BUDGET).expect("small group");
    let d = derived_subgroup(&t3).len();
    cases.push(case(
        "derived subgroup of SL2(3) has order 8",
        if d == 8 { Ok("8".into()) } else { Err(d.to_string()) },
    ));

    let q = Rationals;
    let dq = Matrix::diag(q, &[q.from_i64(4), q.ratio(1, 4)]);
    cases.push(case("diag(4, 1/4) over Q is one commutator", pairs(factor(&dq), &dq, 1)));
    let mq = Matrix::scalar(q, 2, q.from_i64(-1));
    cases.push(case("-I over Q within three pairs", pairs(factor(&mq), &mq, 3)));

    for n in 3..=8 {
        let j = Matrix::jordan_block(f5.clone(), n, 1);
        cases.push(case(&format!("J_{n}(1) over GF(5) within two pairs"), pairs(jn1_factor(&f5, n), &j, 2)));
    }

    let s = Matrix::scalar(f7.clone(), 3, 2);
    cases.push(case("2I_3 over GF(7) within two pairs", pairs(scalar_factor(&f7, &2, 3), &s, 2)));
    let s = Matrix::scalar(f5.clone(), 4, 2);
    cases.push(case("2I_4 over GF(5) within four pairs", pairs(scalar_factor(&f5, &2, 4), &s, 4)));
    let f11 = gf(11);
    let s = Matrix::scalar(f11.clone(), 4, 10);
    cases.push(case("-I_4 over GF(11) within three pairs", pairs(scalar_factor(&f11, &10, 4), &s, 3)));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (q, n, max) in [(4, 3, 2), (7, 3, 4), (7, 4, 4), (8, 5, 2), (9, 3, 3)] {
        let f = gf(q);
        let mut worst = 0;
        let mut failure = None;
        for _ in 0..25 {
            let a = random_sl(&f, n, &mut rng);
            match checked(factor(&a), &a, max) {
                Ok(c) => worst = worst.max(c.pair_count()),
                Err(e) => {
                    failure = Some(e);
                    break;
                }
            }
        }
        let outcome = match failure {
            None => Ok(format!("25 samples, max {worst} pairs")),
            Some(e) => Err(e),
        };
        cases.push(case(&format!("random SL_{n}(GF({q})) within {max} pairs"), outcome));
    }
    cases
}

fn random_sl(f: &GaloisField, n: usize, rng: &mut ChaCha8Rng) -> Matrix<GaloisField> {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.order())).collect();
        let mut m = Matrix::new(f.clone(), n, data).expect("square");
        let Some(d) = f.inv(&m.det()) else { continue };
        for j in 0..n {
            let v = f.mul(m.get(0, j), &d);
            m.set(0, j, v);
        }
        return m;
    }
}
