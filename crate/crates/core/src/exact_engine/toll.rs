use serde::{Deserialize, Serialize};

/// Per-split cost `b_n`. Every toll charges nothing at `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Toll {
    /// `b_n = n^p` for `n ≥ 2`.
    Power(u32),
    /// Explicit values `b_1, b_2, ...`; sizes past the end reuse `n²`.
    Table(Vec<u64>),
}

impl Default for Toll {
    fn default() -> Self {
        Toll::Power(2)
    }
}

impl Toll {
    pub fn at(&self, n: usize) -> u64 {
        if n <= 1 {
            return 0;
        }
        match self {
            Toll::Power(p) => (n as u64).pow(*p),
            Toll::Table(values) => values.get(n - 1).copied().unwrap_or((n as u64) * (n as u64)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_toll() {
        let t = Toll::default();
        assert_eq!(t.at(1), 0);
        assert_eq!(t.at(2), 4);
        assert_eq!(t.at(10), 100);
    }

    #[test]
    fn table_toll_forces_zero_at_one() {
        let t = Toll::Table(vec![7, 1, 2]);
        assert_eq!(t.at(1), 0);
        assert_eq!(t.at(3), 2);
        assert_eq!(t.at(5), 25);
    }
}
