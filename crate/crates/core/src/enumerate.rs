//! Deterministic integer-point enumeration.
//!
//! Points of `ℤⁿ` are visited shell by shell: shell `s` holds the points of
//! sup-norm exactly `s`, and inside a shell points come in ascending
//! lexicographic order. For `n = 1` the order is `0, -1, 1, -2, 2, …`.
//! This order is part of the external contract: witnesses are the first
//! qualifying point.

/// Search-radius policy shared by every shell search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Replaces the theorem-derived radius when set.
    pub max_shell: Option<u64>,
}

impl SearchOptions {
    pub fn with_max_shell(max_shell: u64) -> Self {
        SearchOptions { max_shell: Some(max_shell) }
    }

    pub fn radius(&self, derived: u64) -> u64 {
        self.max_shell.unwrap_or(derived)
    }
}

/// Points of sup-norm exactly `s` in `[-s, s]ⁿ`, lexicographically.
#[derive(Clone, Debug)]
pub struct Shell {
    s: i64,
    current: Option<Vec<i64>>,
}

impl Shell {
    pub fn new(n: usize, s: u64) -> Self {
        let s = s as i64;
        let start = vec![-s; n];
        let current = if n == 0 && s > 0 { None } else { Some(start) };
        Shell { s, current }
    }

    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else { return };
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                return;
            }
            i -= 1;
            if cur[i] < self.s {
                cur[i] += 1;
                for x in cur[i + 1..].iter_mut() {
                    *x = -self.s;
                }
                return;
            }
        }
    }
}

impl Iterator for Shell {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        loop {
            let cur = self.current.clone()?;
            self.advance();
            if self.s == 0 || cur.iter().any(|x| x.abs() == self.s) {
                return Some(cur);
            }
        }
    }
}

/// All points of sup-norm `≤ radius` in shell order, tagged with their
/// shell index.
pub fn points_up_to(n: usize, radius: u64) -> impl Iterator<Item = (u64, Vec<i64>)> {
    (0..=radius).flat_map(move |s| Shell::new(n, s).map(move |p| (s, p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_order() {
        let pts: Vec<i64> = points_up_to(1, 2).map(|(_, p)| p[0]).collect();
        assert_eq!(pts, vec![0, -1, 1, -2, 2]);
    }

    #[test]
    fn first_shell_in_two_dimensions() {
        let pts: Vec<Vec<i64>> = Shell::new(2, 1).collect();
        assert_eq!(
            pts,
            vec![
                vec![-1, -1],
                vec![-1, 0],
                vec![-1, 1],
                vec![0, -1],
                vec![0, 1],
                vec![1, -1],
                vec![1, 0],
                vec![1, 1]
            ]
        );
    }

    #[test]
    fn shell_sizes() {
        for n in 1..4usize {
            for s in 1..4u64 {
                let expected = (2 * s + 1).pow(n as u32) - (2 * s - 1).pow(n as u32);
                assert_eq!(Shell::new(n, s).count() as u64, expected);
            }
        }
        assert_eq!(Shell::new(0, 0).count(), 1);
        assert_eq!(Shell::new(0, 1).count(), 0);
    }

    #[test]
    fn radius_override() {
        assert_eq!(SearchOptions::default().radius(3), 3);
        assert_eq!(SearchOptions::with_max_shell(1).radius(3), 1);
    }
}
