//! Balanced red-clique colourings of `K_n`.
//!
//! Colour red the edges inside a clique `A` of order `r` and blue everything
//! else. The colouring is balanced (`|R| = |B|`) exactly when
//! `r(r-1)/2 = n(n-1)/4`, which after substituting `y = 2n-1`, `x = 2r-1`
//! becomes the negative Pell equation `y^2 - 2x^2 = -1`.

use serde::Serialize;

use crate::bits::{self, Ones};
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredHost};

/// Largest host materialized as bit matrices (two n x n bit rows, about 300 MB).
pub const MAX_HOST_ORDER: u64 = 50_000;

/// Orders `(n, r)` admitting a balanced red-clique colouring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalSize {
    pub n: u64,
    pub r: u64,
}

impl CanonicalSize {
    /// Validates `r(r-1)/2 = n(n-1)/4` and `2 <= r <= n-1`.
    pub fn new(n: u64, r: u64) -> Result<Self> {
        if r < 2 || r >= n {
            return Err(Error::invalid(format!(
                "clique order {r} must satisfy 2 <= r <= n-1 for n = {n}"
            )));
        }
        let (n128, r128) = (u128::from(n), u128::from(r));
        if 2 * r128 * (r128 - 1) != n128 * (n128 - 1) {
            return Err(Error::invalid(format!(
                "r(r-1)/2 = {} differs from n(n-1)/4 for (n, r) = ({n}, {r})",
                r128 * (r128 - 1) / 2
            )));
        }
        Ok(CanonicalSize { n, r })
    }

    /// The size for host order `n`, if one exists.
    pub fn for_order(n: u64) -> Option<Self> {
        let n128 = u128::from(n);
        // r^2 - r - n(n-1)/2 = 0  =>  (2r - 1)^2 = 1 + 2n(n-1)
        let disc = n128.checked_mul(n128.checked_sub(1)?)?.checked_mul(2)? + 1;
        let root = isqrt(disc);
        if root * root != disc {
            return None;
        }
        let r = u64::try_from(root.div_ceil(2)).ok()?;
        Self::new(n, r).ok()
    }

    /// `x = 2r - 1`.
    pub fn x(&self) -> u128 {
        2 * u128::from(self.r) - 1
    }

    /// `y = 2n - 1`.
    pub fn y(&self) -> u128 {
        2 * u128::from(self.n) - 1
    }

    /// Edges per colour class, `n(n-1)/4`.
    pub fn edges_per_colour(&self) -> u128 {
        let n = u128::from(self.n);
        n * (n - 1) / 4
    }
}

fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// All canonical sizes with `n <= limit`, ascending.
///
/// Walks the solutions of `y^2 - 2x^2 = -1` with `(y, x) -> (3y + 4x, 2y + 3x)`
/// from `(7, 5)`; the trivial solution `(1, 1)` is skipped.
pub fn canonical_sizes(limit: u64) -> Vec<CanonicalSize> {
    let mut out = Vec::new();
    let (mut y, mut x): (u128, u128) = (7, 5);
    loop {
        let n = y.div_ceil(2);
        if n > u128::from(limit) {
            break;
        }
        let size = CanonicalSize::new(n as u64, x.div_ceil(2) as u64).expect("Pell solutions give balanced sizes");
        out.push(size);
        match (
            y.checked_mul(3)
                .and_then(|a| x.checked_mul(4).and_then(|b| a.checked_add(b))),
            y.checked_mul(2)
                .and_then(|a| x.checked_mul(3).and_then(|b| a.checked_add(b))),
        ) {
            (Some(ny), Some(nx)) => (y, x) = (ny, nx),
            _ => break,
        }
    }
    out
}

/// The balanced colouring with red clique `A = {0, ..., r-1}`.
pub fn canonical_colouring(size: CanonicalSize) -> Result<ColouredHost> {
    let size = CanonicalSize::new(size.n, size.r)?;
    if size.n > MAX_HOST_ORDER {
        return Err(Error::SizeLimit {
            guard: "host order",
            limit: MAX_HOST_ORDER as usize,
            actual: usize::try_from(size.n).unwrap_or(usize::MAX),
        });
    }
    let n = size.n as usize;
    let r = size.r as usize;
    Ok(ColouredHost::from_fn(n, |u, v| {
        if u < r && v < r {
            Colour::Red
        } else {
            Colour::Blue
        }
    }))
}

/// Outcome of the obstruction scan, with one witness per pattern found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    /// A path `a-b-c-d` with `ab`, `cd` red and `bc` blue.
    pub rbr_p4: Option<[usize; 4]>,
    /// A triangle `a, b, c` with `ab`, `ac` red and `bc` blue.
    pub k3_two_one: Option<[usize; 3]>,
}

impl ObstructionReport {
    pub fn rbr_p4_found(&self) -> bool {
        self.rbr_p4.is_some()
    }

    pub fn k3_two_one_found(&self) -> bool {
        self.k3_two_one.is_some()
    }
}

/// Searches the host for an r-b-r coloured `P4` and a `(2,1)`-coloured triangle.
///
/// Both scans run over blue edges `bc`: a triangle exists iff `b` and `c` have a
/// common red neighbour, and an r-b-r path exists iff `b` and `c` have red
/// neighbours outside `{b, c}` that are not the same single vertex.
pub fn verify_obstructions(host: &ColouredHost) -> ObstructionReport {
    let n = host.order();
    let mut rbr_p4 = None;
    let mut k3_two_one = None;
    for b in 0..n {
        for c in Ones::new(host.row(b, Colour::Blue)).filter(|&c| c > b) {
            let red_b = host.row(b, Colour::Red);
            let red_c = host.row(c, Colour::Red);
            if k3_two_one.is_none() {
                if let Some(a) = red_b.iter().zip(red_c).enumerate().find_map(|(i, (x, y))| {
                    let w = x & y;
                    (w != 0).then(|| i * bits::WORD_BITS + w.trailing_zeros() as usize)
                }) {
                    k3_two_one = Some([a, b, c]);
                }
            }
            if rbr_p4.is_none() {
                // bc is blue, so c is not a red neighbour of b and vice versa.
                let a = Ones::new(red_b).next();
                let d = Ones::new(red_c).find(|&d| Some(d) != a);
                match (a, d) {
                    (Some(a), Some(d)) => rbr_p4 = Some([a, b, c, d]),
                    (Some(a), None) if bits::count(red_c) == 1 => {
                        // c's only red neighbour is a; try another red neighbour of b.
                        if let Some(a2) = Ones::new(red_b).find(|&x| x != a) {
                            rbr_p4 = Some([a2, b, c, a]);
                        }
                    }
                    _ => {}
                }
            }
            if rbr_p4.is_some() && k3_two_one.is_some() {
                return ObstructionReport { rbr_p4, k3_two_one };
            }
        }
    }
    ObstructionReport { rbr_p4, k3_two_one }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_sizes(limit: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for n in 2..=limit {
            for r in 2..n {
                if 2 * r * (r - 1) == n * (n - 1) {
                    out.push((n, r));
                }
            }
        }
        out
    }

    fn pairs(sizes: &[CanonicalSize]) -> Vec<(u64, u64)> {
        sizes.iter().map(|s| (s.n, s.r)).collect()
    }

    #[test]
    fn sizes_up_to_25() {
        assert_eq!(brute_sizes(25), vec![(4, 3), (21, 15)]);
        assert_eq!(pairs(&canonical_sizes(25)), brute_sizes(25));
    }

    #[test]
    fn sizes_up_to_150() {
        assert_eq!(brute_sizes(150), vec![(4, 3), (21, 15), (120, 85)]);
        assert_eq!(pairs(&canonical_sizes(150)), brute_sizes(150));
    }

    #[test]
    fn no_sizes_below_four() {
        assert!(canonical_sizes(3).is_empty());
        assert!(canonical_sizes(0).is_empty());
    }

    #[test]
    fn pell_identity_holds() {
        for s in canonical_sizes(1_000_000_000_000_000_000) {
            let (y, x) = (s.y(), s.x());
            assert_eq!(y * y + 1, 2 * x * x, "{s:?}");
        }
    }

    #[test]
    fn recurrence_generates_consecutive_solutions() {
        let sizes = canonical_sizes(1_000_000_000);
        for w in sizes.windows(2) {
            let (y, x) = (w[0].y(), w[0].x());
            assert_eq!((w[1].y(), w[1].x()), (3 * y + 4 * x, 2 * y + 3 * x));
        }
    }

    #[test]
    fn size_validation() {
        assert!(CanonicalSize::new(4, 3).is_ok());
        assert!(CanonicalSize::new(5, 3).is_err());
        assert!(CanonicalSize::new(1, 1).is_err());
        assert_eq!(CanonicalSize::for_order(21), Some(CanonicalSize { n: 21, r: 15 }));
        assert_eq!(CanonicalSize::for_order(20), None);
        assert_eq!(CanonicalSize::for_order(1), None);
    }

    #[test]
    fn colour_counts() {
        let h = canonical_colouring(CanonicalSize::new(4, 3).unwrap()).unwrap();
        assert_eq!((h.red_count(), h.blue_count()), (3, 3));
        let h = canonical_colouring(CanonicalSize::new(21, 15).unwrap()).unwrap();
        assert_eq!((h.red_count(), h.blue_count()), (105, 105));
        assert!(canonical_colouring(CanonicalSize { n: 5, r: 3 }).is_err());
    }

    /// Exhaustive scan over ordered 4-tuples and triangles.
    fn brute_obstructions(h: &ColouredHost) -> (bool, bool) {
        let n = h.order();
        let mut p4 = false;
        let mut k3 = false;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let reds = [h.colour(a, b), h.colour(b, c), h.colour(a, c)]
                        .iter()
                        .filter(|&&c| c == Colour::Red)
                        .count();
                    k3 |= reds == 2;
                    for d in 0..n {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        p4 |= h.colour(a, b) == Colour::Red
                            && h.colour(b, c) == Colour::Blue
                            && h.colour(c, d) == Colour::Red;
                    }
                }
            }
        }
        (p4, k3)
    }

    #[test]
    fn canonical_hosts_have_no_obstructions() {
        for s in canonical_sizes(25) {
            let h = canonical_colouring(s).unwrap();
            let rep = verify_obstructions(&h);
            assert_eq!((rep.rbr_p4_found(), rep.k3_two_one_found()), (false, false));
            assert_eq!(brute_obstructions(&h), (false, false));
        }
    }

    #[test]
    fn k4_with_one_blue_edge() {
        let h = ColouredHost::monochrome(4, Colour::Red).with_flipped(0, 1);
        let rep = verify_obstructions(&h);
        assert!(rep.k3_two_one_found());
        // the lone blue edge has red neighbours 2 and 3 on each side
        assert!(rep.rbr_p4_found());
        assert_eq!(brute_obstructions(&h), (true, true));
    }

    #[test]
    fn scan_matches_brute_force_on_all_k5_colourings() {
        for mask in 0..1u64 << 10 {
            let h = ColouredHost::from_blue_mask(5, mask);
            let rep = verify_obstructions(&h);
            assert_eq!(
                (rep.rbr_p4_found(), rep.k3_two_one_found()),
                brute_obstructions(&h),
                "mask {mask:#b}"
            );
            if let Some([a, b, c, d]) = rep.rbr_p4 {
                assert_eq!(
                    [h.colour(a, b), h.colour(b, c), h.colour(c, d)],
                    [Colour::Red, Colour::Blue, Colour::Red]
                );
                assert!(a != d);
            }
        }
    }
}
