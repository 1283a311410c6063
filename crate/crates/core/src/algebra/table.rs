use alloc::format;
use alloc::vec::Vec;

use crate::error::{usage, Result};

/// A finite semigroup given by its multiplication table.
///
/// Elements are `0..order` internally. When the table has no identity the
/// index `order` stands for the identity adjoined in `S¹`; it never appears
/// in the table itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    order: usize,
    cells: Vec<u32>,
    identity: Option<u32>,
}

impl Table {
    /// Builds a table from 0-based rows, rejecting non-square or
    /// non-associative input.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(usage("a multiplication table needs at least one element"));
        }
        if order >= u32::MAX as usize {
            return Err(usage("table too large"));
        }
        let mut cells = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(usage(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    order
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(usage(format!(
                        "entry {} out of range in row {}",
                        x + 1,
                        i + 1
                    )));
                }
                cells.push(x as u32);
            }
        }
        let mut table = Table {
            order,
            cells,
            identity: None,
        };
        table.check_associative()?;
        table.identity = table.detect_identity();
        Ok(table)
    }

    fn check_associative(&self) -> Result<()> {
        let m = self.order as u32;
        for x in 0..m {
            for y in 0..m {
                let xy = self.get(x, y);
                for z in 0..m {
                    if self.get(xy, z) != self.get(x, self.get(y, z)) {
                        return Err(usage(format!(
                            "table is not associative: ({}{}){} != {}({}{})",
                            x + 1,
                            y + 1,
                            z + 1,
                            x + 1,
                            y + 1,
                            z + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn detect_identity(&self) -> Option<u32> {
        let m = self.order as u32;
        (0..m).find(|&e| (0..m).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Option<u32> {
        self.identity
    }

    /// Index of the identity of `S¹`: the native identity, or the adjoined one.
    pub fn root(&self) -> u32 {
        self.identity.unwrap_or(self.order as u32)
    }

    /// Whether `x` is a valid index, counting the adjoined identity.
    pub fn contains(&self, x: u32) -> bool {
        (x as usize) < self.order || (self.identity.is_none() && x as usize == self.order)
    }

    /// Product of two indices; the adjoined identity is neutral.
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let m = self.order as u32;
        if x == m {
            y
        } else if y == m {
            x
        } else {
            self.get(x, y)
        }
    }

    fn get(&self, x: u32, y: u32) -> u32 {
        self.cells[x as usize * self.order + y as usize]
    }

    /// Rows of the table, 0-based.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(|row| row.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// The table of `S¹`: unchanged for monoids, otherwise one extra row and
    /// column for the identity at index `order`.
    pub fn with_identity(&self) -> Table {
        if self.identity.is_some() {
            return self.clone();
        }
        let m = self.order + 1;
        let mut cells = Vec::with_capacity(m * m);
        for x in 0..m as u32 {
            for y in 0..m as u32 {
                cells.push(self.mul(x, y));
            }
        }
        Table {
            order: m,
            cells,
            identity: Some(self.order as u32),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn detects_identity_and_rejects_bad_tables() {
        let c2 = Table::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.identity(), Some(0));
        assert_eq!(c2.root(), 0);

        let left_zero = Table::from_rows(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(left_zero.identity(), None);
        assert_eq!(left_zero.root(), 2);
        assert_eq!(left_zero.mul(2, 1), 1);
        assert!(left_zero.contains(2));

        assert!(Table::from_rows(&[vec![0, 1]]).is_err());
        assert!(Table::from_rows(&[vec![0, 2], vec![1, 0]]).is_err());
        // x*y = 1 - x is not associative: (0*0)*0 = 0 but 0*(0*0) = 1.
        assert!(Table::from_rows(&[vec![1, 1], vec![0, 0]]).is_err());
    }

    #[test]
    fn adjoining_identity_extends_the_table() {
        let left_zero = Table::from_rows(&[vec![0, 0], vec![1, 1]]).unwrap();
        let one = left_zero.with_identity();
        assert_eq!(one.order(), 3);
        assert_eq!(one.identity(), Some(2));
        assert_eq!(
            one.rows(),
            vec![vec![0, 0, 0], vec![1, 1, 1], vec![0, 1, 2]]
        );
        assert!(!one.contains(3));
    }
}
