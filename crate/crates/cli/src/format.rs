//! Text formats: field specs, element tokens and matrix files.

use num_bigint::BigInt;
use num_rational::BigRational;
use u2comm_core::field::{AnyField, Field, GaloisField, Rationals};
use u2comm_core::linalg::Matrix;

use crate::error::{input, CliResult};

/// Fields whose element tokens can be read back.
pub trait ParseElem: Field {
    fn parse_elem(&self, token: &str) -> CliResult<Self::Elem>;
}

impl ParseElem for GaloisField {
    fn parse_elem(&self, token: &str) -> CliResult<u32> {
        if let Some(inner) = token.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| input(format!("bad coefficient list {token:?}")))?;
            return self
                .from_coeffs(&coeffs)
                .ok_or_else(|| input(format!("{token:?} is not an element of {}", self.describe())));
        }
        let v: i64 = token
            .parse()
            .map_err(|_| input(format!("bad element token {token:?}")))?;
        if self.degree() > 1 && (v < 0 || v as u64 >= self.p() as u64) {
            return Err(input(format!(
                "{token:?}: extension elements are written (c0,...,c{})",
                self.degree() - 1
            )));
        }
        Ok(self.from_i64(v))
    }
}

impl ParseElem for Rationals {
    fn parse_elem(&self, token: &str) -> CliResult<BigRational> {
        let bad = || input(format!("bad rational token {token:?}"));
        let (num, den) = match token.split_once('/') {
            Some((n, d)) => (n, d),
            None => (token, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den == BigInt::from(0) {
            return Err(input(format!("zero denominator in {token:?}")));
        }
        Ok(BigRational::new(num, den))
    }
}

/// `GF(7)`, `GF(9)`, `GF(9;1,0,1)` (modulus coefficients ascending) or `Q`.
pub fn parse_field_spec(spec: &str) -> CliResult<AnyField> {
    let spec = spec.trim();
    if spec == "Q" {
        return Ok(AnyField::Rational(Rationals));
    }
    let bad = || input(format!("bad field spec {spec:?}; expected GF(q), GF(q;c0,...,ck) or Q"));
    let inner = spec
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (order, modulus) = match inner.split_once(';') {
        Some((q, m)) => (q, Some(m)),
        None => (inner, None),
    };
    let q: u64 = order.trim().parse().map_err(|_| bad())?;
    let field = match modulus {
        None => GaloisField::of_order(q)?,
        Some(m) => {
            let coeffs = m
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            let (p, k) = prime_power(q).ok_or_else(|| input(format!("{q} is not a prime power")))?;
            GaloisField::extension(p, k, Some(&coeffs))?
        }
    };
    if field.size() != Some(q) {
        return Err(bad());
    }
    Ok(AnyField::Finite(field))
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// A matrix file before its entries are interpreted in the field.
#[derive(Clone, Debug)]
pub struct MatrixFile {
    pub field: AnyField,
    pub rows: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn n(&self) -> usize {
        self.rows.len()
    }
}

/// Line 1: field spec, line 2: `n`, then `n` rows of `n` tokens.
/// `#` starts a comment; blank lines are skipped.
pub fn parse_matrix_file(text: &str) -> CliResult<MatrixFile> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let field = parse_field_spec(lines.next().ok_or_else(|| input("empty matrix file"))?)?;
    let n_line = lines.next().ok_or_else(|| input("missing dimension line"))?;
    let n: usize = n_line
        .parse()
        .map_err(|_| input(format!("bad dimension {n_line:?}")))?;
    if n == 0 {
        return Err(input("dimension must be positive"));
    }
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect();
    if rows.len() != n {
        return Err(input(format!("expected {n} rows, found {}", rows.len())));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(input(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
    }
    Ok(MatrixFile { field, rows })
}

/// Interprets a square grid of tokens.
pub fn matrix_from_tokens<F: ParseElem>(field: &F, rows: &[Vec<String>]) -> CliResult<Matrix<F>> {
    let n = rows.len();
    let mut data = Vec::with_capacity(n * n);
    for row in rows {
        if row.len() != n {
            return Err(input(format!("matrix row has {} entries, expected {n}", row.len())));
        }
        for t in row {
            data.push(field.parse_elem(t)?);
        }
    }
    Ok(Matrix::new(field.clone(), n, data)?)
}

/// Writes a matrix in the matrix-file format.
pub fn emit_matrix_file<F: Field>(m: &Matrix<F>) -> String {
    let mut s = format!("{}\n{}\n", m.field().describe(), m.n());
    for row in m.tokens() {
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Runs `$body` with `$f` bound to the concrete field inside an [`AnyField`].
#[macro_export]
macro_rules! with_field {
    ($any:expr, $f:ident => $body:expr) => {
        match $any {
            u2comm_core::field::AnyField::Finite($f) => $body,
            u2comm_core::field::AnyField::Rational($f) => $body,
        }
    };
}
