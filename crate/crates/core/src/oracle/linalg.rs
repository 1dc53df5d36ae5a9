//! Integer linear forms over the six indices (k, m, n, k′, m′, n′) and exact
//! row reduction.

/// Coefficients of a linear form in (k, m, n, k′, m′, n′).
pub type Form = [i64; 6];

pub const VARIABLES: [&str; 6] = ["k", "m", "n", "k'", "m'", "n'"];

/// k − m + n − k′ + m′ − n′: the difference of the two S_i constraints,
/// which every term satisfies once both indices sum to i.
pub const S_DIFF: Form = [1, -1, 1, -1, 1, -1];

/// Reduced row echelon form with primitive integer rows and positive pivots.
/// Zero rows are dropped; the result is unique for a given row space.
pub fn rref(rows: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<usize>) {
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        normalise(&mut m[r]);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = *x * a - y * b;
                }
                normalise(&mut m[i]);
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    for row in m.iter_mut() {
        normalise(row);
    }
    (m, pivots)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divides by the content and makes the leading entry positive.
fn normalise(row: &mut [i64]) {
    let g = row.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        return;
    }
    let lead = row.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    let s = if lead < 0 { -g } else { g };
    row.iter_mut().for_each(|x| *x /= s);
}

pub fn rank(rows: &[Form]) -> usize {
    let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    rref(&v).0.len()
}

/// Canonical basis of span(rows ∪ {S_DIFF}).
pub fn span_key(rows: &[Form]) -> Vec<Form> {
    let mut v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    v.push(S_DIFF.to_vec());
    rref(&v)
        .0
        .into_iter()
        .map(|r| r.try_into().expect("six columns"))
        .collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Form], v: &Form) -> bool {
    let mut rows = basis.to_vec();
    let r0 = rank(&rows);
    rows.push(*v);
    rank(&rows) == r0
}

/// Reads a form such as "k-m+n'" or "m+k'-m'+n'" (unit coefficients only).
pub fn parse_form(s: &str) -> Option<Form> {
    let mut out = [0i64; 6];
    let mut sign = 1;
    let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        match c {
            '+' | '-' => sign = if c == '-' { -1 } else { 1 },
            'k' | 'm' | 'n' => {
                let base = match c {
                    'k' => 0,
                    'm' => 1,
                    _ => 2,
                };
                let primed = chars.peek() == Some(&'\'');
                if primed {
                    chars.next();
                }
                out[base + if primed { 3 } else { 0 }] += sign;
                sign = 1;
            }
            _ => return None,
        }
    }
    Some(out)
}

/// Renders a form back in the notation of `parse_form`.
pub fn format_form(f: &Form) -> String {
    let mut s = String::new();
    for (c, name) in f.iter().zip(VARIABLES) {
        match *c {
            0 => {}
            1 if s.is_empty() => s.push_str(name),
            1 => s += &format!("+{name}"),
            -1 => s += &format!("-{name}"),
            c if s.is_empty() || c < 0 => s += &format!("{c}{name}"),
            c => s += &format!("+{c}{name}"),
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_form("k-m+n").unwrap(), [1, -1, 1, 0, 0, 0]);
        assert_eq!(parse_form("m+k'-m'+n'").unwrap(), [0, 1, 0, 1, -1, 1]);
        assert_eq!(parse_form("-k'+n").unwrap(), [0, 0, 1, -1, 0, 0]);
        assert!(parse_form("k+x").is_none());
        for s in ["k-m+n-k'+m'-n'", "k+n", "m-n-m'+n'"] {
            assert_eq!(format_form(&parse_form(s).unwrap()), s);
        }
    }

    #[test]
    fn rref_is_canonical() {
        let a = [parse_form("k-k'").unwrap(), parse_form("m-m'").unwrap()];
        let b = [
            parse_form("k-k'+m-m'").unwrap(),
            parse_form("k-k'-m+m'").unwrap(),
        ];
        assert_eq!(span_key(&a), span_key(&b));
        assert_eq!(span_key(&a).len(), 3);
        assert!(in_span(&span_key(&a), &parse_form("n-n'").unwrap()));
        assert!(!in_span(&span_key(&a), &parse_form("n").unwrap()));
    }

    #[test]
    fn rref_with_rhs_column() {
        // x + y = 3, x − y = 1  →  x = 2, y = 1
        let (r, piv) = rref(&[vec![1, 1, 3], vec![1, -1, 1]]);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, vec![vec![1, 0, 2], vec![0, 1, 1]]);
        // 2x = 3 keeps the non-unit pivot so integrality can be checked
        let (r, _) = rref(&[vec![2, 3]]);
        assert_eq!(r, vec![vec![2, 3]]);
    }
}
