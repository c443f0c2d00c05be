/// Lexicographic iterator over `{0..m-1}^n`. Yields one empty tuple when
/// `n == 0`, none when `m == 0 < n`.
#[derive(Clone, Debug)]
pub struct Tuples {
    m: usize,
    cur: Vec<usize>,
    done: bool,
}

pub fn tuples(m: usize, n: usize) -> Tuples {
    Tuples { m, cur: vec![0; n], done: m == 0 && n > 0 }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut k = self.cur.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.cur[k] += 1;
            if self.cur[k] < self.m {
                break;
            }
            self.cur[k] = 0;
        }
        Some(out)
    }
}

/// Row-major index of `args` in a table over a carrier of size `m`.
pub fn tuple_index(m: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * m + a)
}

/// `m^n`, saturating.
pub fn pow(m: usize, n: usize) -> usize {
    (0..n).fold(1usize, |acc, _| acc.saturating_mul(m))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_cover_the_cube_in_order() {
        let all: Vec<_> = tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0).count(), 1);
        assert_eq!(tuples(0, 2).count(), 0);
        assert_eq!(tuples(0, 0).count(), 1);
    }

    #[test]
    fn index_matches_enumeration_order() {
        for (k, t) in tuples(3, 3).enumerate() {
            assert_eq!(tuple_index(3, &t), k);
        }
    }
}
