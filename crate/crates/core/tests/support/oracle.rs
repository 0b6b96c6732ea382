//! Plain u64 arithmetic mod a small prime. Shares no code with the crate's
//! scalar types, so it can recompute mock-engine artifacts independently.

use ribe::algebra::{ExponentVector, GroupVector, Zq};

#[derive(Clone, Copy, Debug)]
pub struct Field(pub u64);

impl Field {
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.0
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }

    pub fn dot(self, a: &[u64], b: &[u64]) -> u64 {
        assert_eq!(a.len(), b.len());
        a.iter()
            .zip(b)
            .fold(0, |acc, (x, y)| self.add(acc, self.mul(*x, *y)))
    }

    /// `sum_k c_k * vectors[i_k]`.
    pub fn combine(self, vectors: &[Vec<u64>], terms: &[(usize, u64)]) -> Vec<u64> {
        let n = vectors[0].len();
        let mut out = vec![0; n];
        for (i, c) in terms {
            for (o, v) in out.iter_mut().zip(&vectors[*i]) {
                *o = self.add(*o, self.mul(*c, *v));
            }
        }
        out
    }
}

pub fn residues(v: &ExponentVector<Zq>) -> Vec<u64> {
    v.coords().iter().map(Zq::value).collect()
}

pub fn element_residues(v: &GroupVector<Zq>) -> Vec<u64> {
    v.elements().iter().map(Zq::value).collect()
}
