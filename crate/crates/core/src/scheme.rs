//! Finite association schemes stored as color matrices.

use crate::algebra::{RelSet, RelationAlgebra};
use crate::error::{Error, Result};

/// A based association scheme on the points `0..order`.
///
/// `color(x, y)` is the index of the unique relation containing `(x, y)`.
/// Relation `0` is always the diagonal. The involution, the structure
/// constants and the valencies are computed and checked at construction,
/// so every value of this type satisfies the scheme axioms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scheme {
    order: usize,
    rank: usize,
    basepoint: usize,
    color: Vec<usize>,
    star: Vec<usize>,
    constants: Vec<u32>,
    valencies: Vec<usize>,
}

impl Scheme {
    /// Validate a color matrix and build the scheme.
    ///
    /// Relation indices are kept exactly as given: they must be the
    /// contiguous range `0..r`, with `0` on the diagonal and nowhere else.
    pub fn from_color_matrix(matrix: &[Vec<usize>], basepoint: usize) -> Result<Scheme> {
        let order = matrix.len();
        if order == 0 {
            return Err(Error::Empty);
        }
        let mut color = Vec::with_capacity(order * order);
        for (row, entries) in matrix.iter().enumerate() {
            if entries.len() != order {
                return Err(Error::NotSquare { row, len: entries.len(), expected: order });
            }
            color.extend_from_slice(entries);
        }
        Scheme::from_flat(order, color, basepoint)
    }

    /// Same as [`Scheme::from_color_matrix`] for a row-major flat matrix.
    pub fn from_flat(order: usize, color: Vec<usize>, basepoint: usize) -> Result<Scheme> {
        if order == 0 {
            return Err(Error::Empty);
        }
        if color.len() != order * order {
            return Err(Error::NotSquare {
                row: color.len() / order,
                len: color.len() % order,
                expected: order,
            });
        }
        if basepoint >= order {
            return Err(Error::BasepointOutOfRange { basepoint, order });
        }
        let at = |x: usize, y: usize| color[x * order + y];

        for x in 0..order {
            if at(x, x) != 0 {
                return Err(Error::BadIndex(format!(
                    "diagonal entry ({x}, {x}) is {}, expected 0",
                    at(x, x)
                )));
            }
        }
        let rank = color.iter().copied().max().unwrap_or(0) + 1;
        let mut witness = vec![None; rank];
        for x in 0..order {
            for y in 0..order {
                let s = at(x, y);
                if s == 0 && x != y {
                    return Err(Error::NotAPartitionOfDiagonal { x, y });
                }
                if witness[s].is_none() {
                    witness[s] = Some((x, y));
                }
            }
        }
        if let Some(missing) = witness.iter().position(Option::is_none) {
            return Err(Error::BadIndex(format!(
                "relation indices are not contiguous: {missing} is unused below the maximum {}",
                rank - 1
            )));
        }
        let witness: Vec<(usize, usize)> = witness.into_iter().map(Option::unwrap).collect();

        let star: Vec<usize> = witness.iter().map(|&(x, y)| at(y, x)).collect();
        for x in 0..order {
            for y in 0..order {
                let s = at(x, y);
                if at(y, x) != star[s] {
                    return Err(Error::NoInvolution { x, y, expected_star: star[s] });
                }
            }
        }

        // Constants from one witness pair per relation.
        let mut constants = vec![0u32; rank * rank * rank];
        let idx = |p: usize, q: usize, s: usize| (p * rank + q) * rank + s;
        for (s, &(x, y)) in witness.iter().enumerate() {
            for z in 0..order {
                constants[idx(at(x, z), at(z, y), s)] += 1;
            }
        }

        // Every other pair must reproduce them. The counts for one pair sum
        // to `order`, as do the witness constants, so it is enough to compare
        // the cells the pair touches.
        let mut scratch = vec![0u32; rank * rank];
        let mut touched = Vec::with_capacity(order);
        for x in 0..order {
            for y in 0..order {
                let s = at(x, y);
                for z in 0..order {
                    let cell = at(x, z) * rank + at(z, y);
                    if scratch[cell] == 0 {
                        touched.push(cell);
                    }
                    scratch[cell] += 1;
                }
                for &cell in &touched {
                    let expected = constants[cell * rank + s];
                    let found = scratch[cell];
                    if expected != found {
                        return Err(Error::NotRegular {
                            p: cell / rank,
                            q: cell % rank,
                            s,
                            witness: witness[s],
                            expected,
                            other: (x, y),
                            found,
                        });
                    }
                }
                for &cell in &touched {
                    scratch[cell] = 0;
                }
                touched.clear();
            }
        }

        let valencies = (0..rank)
            .map(|s| constants[idx(s, star[s], 0)] as usize)
            .collect();

        Ok(Scheme { order, rank, basepoint, color, star, constants, valencies })
    }

    /// The thin scheme of a finite group given by its multiplication table
    /// (`table[i][j]` is the index of `g_i g_j`, identity at index 0).
    ///
    /// Relation `g` holds the pairs `(x, y)` with `y = x g`.
    pub fn thin_from_group(table: &[Vec<usize>]) -> Result<Scheme> {
        let m = table.len();
        if m == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::NotAGroup(format!("row {i} has {} entries, expected {m}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= m) {
                return Err(Error::NotAGroup(format!("entry {bad} in row {i} is out of range")));
            }
        }
        for i in 0..m {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::NotAGroup(format!("index 0 is not an identity for element {i}")));
            }
        }
        let mut inverse = vec![usize::MAX; m];
        for (i, inv) in inverse.iter_mut().enumerate() {
            let right = (0..m).find(|&j| table[i][j] == 0);
            let left = (0..m).find(|&j| table[j][i] == 0);
            match (right, left) {
                (Some(r), Some(l)) if r == l => *inv = r,
                _ => return Err(Error::NotAGroup(format!("element {i} has no two-sided inverse"))),
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let color = (0..m)
            .flat_map(|x| {
                let inv = inverse[x];
                (0..m).map(move |y| table[inv][y])
            })
            .collect();
        Scheme::from_flat(m, color, 0)
    }

    /// Cayley table of the cyclic group `Z/m`.
    pub fn cyclic_table(m: usize) -> Vec<Vec<usize>> {
        (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect()
    }

    /// The one-point scheme.
    pub fn trivial() -> Scheme {
        Scheme::from_flat(1, vec![0], 0).expect("one-point scheme")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    #[inline]
    pub fn color(&self, x: usize, y: usize) -> usize {
        self.color[x * self.order + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.color[x * self.order..(x + 1) * self.order]
    }

    pub fn color_matrix(&self) -> Vec<Vec<usize>> {
        self.color.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn star_map(&self) -> &[usize] {
        &self.star
    }

    /// `a[p][q][s]` as a nested table.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<u32>>> {
        let r = self.rank;
        (0..r)
            .map(|p| (0..r).map(|q| (0..r).map(|s| self.constant(p, q, s)).collect()).collect())
            .collect()
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    pub fn valency(&self, s: usize) -> usize {
        self.valencies[s]
    }

    /// Total valency of a set of relations (the size of any coset it spans
    /// when the set is closed).
    pub fn set_valency(&self, set: &RelSet) -> usize {
        set.iter().map(|s| self.valencies[s]).sum()
    }

    /// Points `y` with `(x, y)` in relation `s`.
    pub fn neighbours(&self, x: usize, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(x).iter().enumerate().filter(move |(_, &c)| c == s).map(|(y, _)| y)
    }

    /// Points `y` with `(x, y)` in some member of `set`.
    pub fn reach(&self, x: usize, set: &RelSet) -> Vec<usize> {
        self.row(x)
            .iter()
            .enumerate()
            .filter(|(_, &c)| set.contains(c))
            .map(|(y, _)| y)
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.star.iter().enumerate().all(|(p, &q)| p == q)
    }

    pub fn is_thin(&self) -> bool {
        self.valencies.iter().all(|&v| v == 1)
    }

    /// Same relations, different basepoint.
    pub fn with_basepoint(&self, basepoint: usize) -> Result<Scheme> {
        if basepoint >= self.order {
            return Err(Error::BasepointOutOfRange { basepoint, order: self.order });
        }
        Ok(Scheme { basepoint, ..self.clone() })
    }

    pub fn full_set(&self) -> RelSet {
        RelSet::full(self.rank)
    }

    pub fn check_relation(&self, s: usize) -> Result<()> {
        if s < self.rank {
            Ok(())
        } else {
            Err(Error::RelationOutOfRange { relation: s, rank: self.rank })
        }
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::PointOutOfRange { point: x, order: self.order })
        }
    }
}

impl RelationAlgebra for Scheme {
    fn rank(&self) -> usize {
        self.rank
    }

    fn star(&self, p: usize) -> usize {
        self.star[p]
    }

    #[inline]
    fn constant(&self, p: usize, q: usize, s: usize) -> u32 {
        self.constants[(p * self.rank + q) * self.rank + s]
    }
}
