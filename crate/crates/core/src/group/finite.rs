use std::sync::Arc;

use serde::Deserialize;

use super::{check_cap, Group, GroupDescriptor};
use crate::error::{Error, Result};

/// A finite group given by its multiplication table.
///
/// Elements are indices `0..n` with `0` the identity.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Arc<[usize]>,
    inverses: Arc<[usize]>,
    descriptor: Arc<GroupDescriptor>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking the group
    /// axioms: Latin square, `0` is a two-sided identity, associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let desc = GroupDescriptor::Table { table: rows.clone() };
        Self::from_rows(rows, desc)
    }

    fn from_rows(rows: Vec<Vec<usize>>, descriptor: GroupDescriptor) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        check_cap(n)?;
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            table.extend_from_slice(row);
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j];
                let c = table[j * n + i];
                if seen_row[r] || seen_col[c] {
                    return Err(Error::InvalidTable(format!("not a Latin square at line {i}")));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        for i in 0..n {
            if table[i] != i || table[i * n] != i {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverses = vec![0; n];
        for (a, inv) in inverses.iter_mut().enumerate() {
            // Latin square: exactly one b with ab = e.
            let b = (0..n).find(|&b| table[a * n + b] == 0).expect("Latin row contains identity");
            if table[b * n + a] != 0 {
                return Err(Error::InvalidTable(format!("left and right inverses of {a} differ")));
            }
            *inv = b;
        }
        Ok(FiniteGroup {
            order: n,
            table: table.into(),
            inverses: inverses.into(),
            descriptor: Arc::new(descriptor),
        })
    }

    fn from_fn(n: usize, descriptor: GroupDescriptor, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        check_cap(n)?;
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::from_rows(rows, descriptor)
    }

    /// Cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic group needs n >= 1".into()));
        }
        Self::from_fn(n, GroupDescriptor::Cyclic { n }, |i, j| (i + j) % n)
    }

    /// Dihedral group of order `2n`; element `k + n*f` stands for `r^k s^f`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dihedral group needs n >= 1".into()));
        }
        Self::from_fn(2 * n, GroupDescriptor::Dihedral { n }, |x, y| {
            let (k, f) = (x % n, x / n);
            let (l, g) = (y % n, y / n);
            // r^k s^f r^l s^g = r^(k + (-1)^f l) s^(f+g)
            let rot = if f == 0 { (k + l) % n } else { (k + n - l) % n };
            rot + n * ((f + g) % 2)
        })
    }

    /// Symmetric group on `n <= 5` letters; permutations indexed in
    /// lexicographic order, composed as `(st)(i) = s(t(i))`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 5 {
            return Err(Error::InvalidArgument(format!("symmetric(n) supports 1 <= n <= 5, got {n}")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation");
        let rows = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                        index(&st)
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(rows, GroupDescriptor::Symmetric { n })
    }

    /// Direct product; the pair `(a, b)` has index `a * |h| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let m = h.order;
        let desc = GroupDescriptor::Product {
            factors: vec![g.descriptor(), h.descriptor()],
        };
        Self::from_fn(g.order * m, desc, |x, y| {
            g.table[(x / m) * g.order + y / m] * m + h.table[(x % m) * m + y % m]
        })
    }

    pub(crate) fn from_descriptor(desc: &GroupDescriptor) -> Result<Self> {
        match desc {
            GroupDescriptor::Cyclic { n } => Self::cyclic(*n),
            GroupDescriptor::Dihedral { n } => Self::dihedral(*n),
            GroupDescriptor::Symmetric { n } => Self::symmetric(*n),
            GroupDescriptor::Table { table } => Self::from_table(table.clone()),
            GroupDescriptor::Product { factors } => {
                let mut it = factors.iter();
                let first = it
                    .next()
                    .ok_or_else(|| Error::InvalidArgument("product of zero factors".into()))?;
                let mut acc = Self::from_descriptor(first)?;
                for f in it {
                    acc = Self::product(&acc, &Self::from_descriptor(f)?)?;
                }
                // keep the flat descriptor the caller wrote
                acc.descriptor = Arc::new(desc.clone());
                Ok(acc)
            }
            other => Err(Error::KindMismatch(format!("{other:?} is not a finite group"))),
        }
    }

    /// Parses a table file: either plain text (first line `n`, then `n` rows
    /// of `n` whitespace-separated indices) or JSON (`[[..],..]` or
    /// `{"table": [[..],..]}`).
    pub fn parse_table(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('[') || trimmed.starts_with('{') {
            #[derive(Deserialize)]
            #[serde(untagged)]
            enum TableFile {
                Bare(Vec<Vec<usize>>),
                Wrapped { table: Vec<Vec<usize>> },
            }
            let rows = match serde_json::from_str::<TableFile>(trimmed)? {
                TableFile::Bare(t) | TableFile::Wrapped { table: t } => t,
            };
            return Self::from_table(rows);
        }
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::InvalidTable("missing order line".into()))?
            .parse()
            .map_err(|_| Error::InvalidTable("first line must be the group order".into()))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::InvalidTable(format!("bad entry: {e}")))?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::InvalidTable(format!("expected {n} rows, found {}", rows.len())));
        }
        Self::from_table(rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn check(&self, x: usize) -> Result<()> {
        if x >= self.order {
            return Err(Error::ElementOutOfRange { element: x, order: self.order });
        }
        Ok(())
    }

    /// Range-checked product.
    pub fn try_mul(&self, x: usize, y: usize) -> Result<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.table[x * self.order + y])
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

impl Group for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, x: &usize, y: &usize) -> usize {
        self.table[x * self.order + y]
    }

    fn inv(&self, x: &usize) -> usize {
        self.inverses[*x]
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order).collect())
    }

    fn descriptor(&self) -> GroupDescriptor {
        (*self.descriptor).clone()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_axioms(g: &FiniteGroup) {
        let n = g.order();
        for x in 0..n {
            assert_eq!(g.mul(&x, &g.inv(&x)), 0);
            assert_eq!(g.mul(&g.inv(&x), &x), 0);
            for y in 0..n {
                for z in 0..n {
                    assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
                }
            }
        }
    }

    #[test]
    fn cyclic_arithmetic() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.try_mul(1, 3).unwrap(), 0);
        assert_eq!(z4.try_mul(2, 3).unwrap(), 1);
        assert!(matches!(z4.try_mul(4, 0), Err(Error::ElementOutOfRange { element: 4, order: 4 })));
    }

    #[test]
    fn builtin_groups_satisfy_axioms() {
        for g in [
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(4).unwrap()).unwrap(),
        ] {
            assert_axioms(&g);
        }
    }

    #[test]
    fn nonabelian_groups_do_not_commute() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!((0..6).any(|x| (0..6).any(|y| s3.mul(&x, &y) != s3.mul(&y, &x))));
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        // s r s = r^{-1}
        assert_eq!(d4.mul(&d4.mul(&4, &1), &4), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![]).is_err());
        // Latin square with identity 0 that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(loop5), Err(Error::InvalidTable(_))));
        assert!(FiniteGroup::symmetric(6).is_err());
    }

    #[test]
    fn parses_text_and_json_tables() {
        let text = "3\n0 1 2\n1 2 0\n2 0 1\n";
        let g = FiniteGroup::parse_table(text).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.inv(&1), 2);
        let j = FiniteGroup::parse_table(r#"{"table": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(j.order(), 2);
        let bare = FiniteGroup::parse_table("[[0,1],[1,0]]").unwrap();
        assert_eq!(bare.table_rows(), j.table_rows());
        assert!(FiniteGroup::parse_table("2\n0 1\n").is_err());
    }
}
