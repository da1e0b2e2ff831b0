//! CSV export of oracle tables: `id, matrix, trace, is_u2, bfs_length`.

use u2comm_core::field::Field;
use u2comm_core::oracle::{GroupTable, LengthTable};

use crate::error::CliResult;

/// Rows separated by `;`, entries by spaces.
pub fn matrix_cell(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join(";")
}

/// One row per id in `ids`; unreachable elements get `inf`.
pub fn write_table<F: Field, W: std::io::Write>(
    out: W,
    t: &GroupTable<F>,
    lengths: &LengthTable,
    ids: &[usize],
) -> CliResult<()> {
    let f = t.field();
    let mut u2 = vec![false; t.order()];
    for &i in t.u2_ids() {
        u2[i] = true;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["id", "matrix", "trace", "is_u2", "bfs_length"])
        .map_err(csv_err)?;
    for &id in ids {
        let m = t.element(id);
        let len = lengths.get(id).map_or_else(|| "inf".to_string(), |l| l.to_string());
        w.write_record([
            id.to_string(),
            matrix_cell(&m.tokens()),
            f.token(&m.trace()),
            u2[id].to_string(),
            len,
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> crate::error::CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io.into(),
        other => crate::error::CliError::Input(format!("csv: {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use u2comm_core::field::GaloisField;
    use u2comm_core::oracle::{bfs_lengths, enumerate_group, DEFAULT_BUDGET};

    #[test]
    fn gf5_table_has_minus_identity_at_length_three() {
        let f = GaloisField::of_order(5).unwrap();
        let t = enumerate_group(&f, 2, DEFAULT_BUDGET).unwrap();
        let lengths = bfs_lengths(&t);
        let ids: Vec<usize> = (0..t.order()).collect();
        let mut buf = Vec::new();
        write_table(&mut buf, &t, &lengths, &ids).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 121);
        assert!(text.lines().any(|l| l.ends_with(",4 0;0 4,3,false,3")));
    }

    #[test]
    fn extension_tokens_are_quoted() {
        let f = GaloisField::of_order(4).unwrap();
        let t = enumerate_group(&f, 2, DEFAULT_BUDGET).unwrap();
        let mut buf = Vec::new();
        write_table(&mut buf, &t, &bfs_lengths(&t), &[0]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let rec = r.records().next().unwrap().unwrap();
        assert_eq!(rec.len(), 5);
        assert!(rec[1].contains('('));
    }
}
