use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliString};

/// One stabilizer of the planar code together with the array site of the
/// syndrome qubit that measures it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingOperator {
    pub site: (usize, usize),
    pub letter: Letter,
    pub op: PauliString,
}

/// Data qubits of a `rows × cols` array sit where `r + c` is even; they are
/// numbered row by row.
pub fn data_qubits(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .filter(|(r, c)| (r + c) % 2 == 0)
        .collect()
}

/// Stabilizers of a planar surface code patch laid out on a `rows × cols`
/// qubit array: syndrome qubits at odd `r + c` measure X on even rows and Z
/// on odd rows, each touching its (up to four) nearest data qubits.
pub fn tiling_layout(rows: usize, cols: usize) -> Result<Vec<TilingOperator>> {
    if rows < 2 || cols < 2 {
        return Err(Error::Precondition(format!(
            "tiling needs at least 2 rows and 2 columns, got {rows}x{cols}"
        )));
    }
    let data = data_qubits(rows, cols);
    let index = |r: usize, c: usize| data.iter().position(|&d| d == (r, c));
    let mut out = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if (r + c) % 2 == 0 {
                continue;
            }
            let letter = if r % 2 == 0 { Letter::X } else { Letter::Z };
            let mut op = PauliString::identity(data.len());
            let near = [
                (r.wrapping_sub(1), c),
                (r + 1, c),
                (r, c.wrapping_sub(1)),
                (r, c + 1),
            ];
            for (nr, nc) in near {
                if nr < rows && nc < cols {
                    if let Some(q) = index(nr, nc) {
                        op.set(q, letter);
                    }
                }
            }
            out.push(TilingOperator {
                site: (r, c),
                letter,
                op,
            });
        }
    }
    Ok(out)
}

pub fn surface_code_tiling(rows: usize, cols: usize) -> Result<Vec<PauliString>> {
    Ok(tiling_layout(rows, cols)?.into_iter().map(|t| t.op).collect())
}
