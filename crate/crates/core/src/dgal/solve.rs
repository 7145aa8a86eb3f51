use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

type Row = BTreeMap<usize, BigRational>;

/// Rows added one at a time, each reduced against the earlier ones; a row's pivot is its
/// smallest unknown.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: BTreeMap<usize, (Row, BigRational)>,
}

impl Echelon {
    /// Adds `row = rhs`. Returns false when the equation contradicts the earlier ones.
    pub(crate) fn insert(&mut self, mut row: Row, mut rhs: BigRational) -> bool {
        row.retain(|_, c| !c.is_zero());
        let mut from = 0;
        loop {
            let Some((&k, c)) = row.range(from..).next() else {
                break;
            };
            let c = c.clone();
            if let Some((prow, prhs)) = self.rows.get(&k) {
                let f = &c / &prow[&k];
                for (j, a) in prow {
                    let e = row.entry(*j).or_insert_with(BigRational::zero);
                    *e -= &f * a;
                    if e.is_zero() {
                        row.remove(j);
                    }
                }
                rhs -= &f * prhs;
            }
            from = k + 1;
        }
        match row.keys().next() {
            Some(&p) => {
                self.rows.insert(p, (row, rhs));
                true
            }
            None => rhs.is_zero(),
        }
    }

    /// A solution with every free unknown set to zero.
    pub(crate) fn solve(&self, n: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); n];
        for (&p, (row, rhs)) in self.rows.iter().rev() {
            let mut v = rhs.clone();
            for (j, a) in row.range(p + 1..) {
                v -= a * &x[*j];
            }
            x[p] = v / &row[&p];
        }
        x
    }
}
