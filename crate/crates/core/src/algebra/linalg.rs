//! Exact linear algebra over a coefficient field.

use super::field::FieldElement;

/// Basis of the right nullspace of `rows` (each of length `ncols`).
pub fn nullspace(rows: &[Vec<FieldElement>], ncols: usize) -> Vec<Vec<FieldElement>> {
    let mut m: Vec<Vec<FieldElement>> = rows.iter().filter(|r| r.iter().any(|c| !c.is_zero())).cloned().collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().unwrap();
        for c in col..ncols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let d = &f * &m[row][c];
                    m[r][c] = &m[r][c] - &d;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![FieldElement::zero(); ncols];
        v[free] = FieldElement::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&m[r][free];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_system() {
        let f = |n: i64| FieldElement::from(n);
        let rows = vec![vec![f(1), f(2), f(3)], vec![f(2), f(4), f(6)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = &(&(&rows[0][0] * &v[0]) + &(&rows[0][1] * &v[1])) + &(&rows[0][2] * &v[2]);
            assert!(dot.is_zero());
        }
    }
}
