use std::fmt;
use std::str::FromStr;

use super::PermError;

/// A permutation of `{1, ..., d}` stored as its image array (0-based internally).
///
/// Points act on the right and products compose left to right:
/// `x^(g*h) = (x^g)^h`. Conjugation is `g^h = h^-1 * g * h`.
///
/// The derived ordering is lexicographic on image arrays, which is the
/// canonical element order used everywhere (class listings, tuple encodings).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            let x = x as usize;
            if x >= d || seen[x] {
                return Err(PermError::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation of the given degree from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p as usize > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                let p0 = (p - 1) as usize;
                if used[p0] {
                    return Err(PermError::RepeatedPoint(p));
                }
                used[p0] = true;
                let next = cycle[(k + 1) % cycle.len()];
                images[p0] = next - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses disjoint-cycle notation such as `(1 2)(3 4 5)`, `(1,2)(3,4,5)`,
    /// `e` or `()`.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let s = text.trim();
        if s == "e" || s == "()" || s.is_empty() {
            return Ok(Self::identity(degree));
        }
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Malformed(text.to_string()))?;
            let close = open
                .find(')')
                .ok_or_else(|| PermError::Malformed(text.to_string()))?;
            let body = &open[..close];
            if body.contains('(') {
                return Err(PermError::Malformed(text.to_string()));
            }
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let p: u32 = tok
                    .parse()
                    .map_err(|_| PermError::Malformed(text.to_string()))?;
                cycle.push(p);
            }
            cycles.push(cycle);
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image array.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Left-to-right product `self * other`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        self.check_degree(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        Self {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self {
            images: inv.into_boxed_slice(),
        }
    }

    /// `h^-1 * self * h`.
    pub fn conjugate(&self, h: &Self) -> Result<Self, PermError> {
        self.check_degree(h)?;
        Ok(self.conj_unchecked(h))
    }

    pub(crate) fn conj_unchecked(&self, h: &Self) -> Self {
        // (x^h)^(g^h) = (x^g)^h
        let mut images = vec![0u32; self.degree()];
        for (x, &gx) in self.images.iter().enumerate() {
            images[h.images[x] as usize] = h.images[gx as usize];
        }
        Self {
            images: images.into_boxed_slice(),
        }
    }

    /// `self * h * self^-1 * h^-1`.
    pub fn commutator(&self, h: &Self) -> Result<Self, PermError> {
        self.check_degree(h)?;
        Ok(self
            .mul_unchecked(h)
            .mul_unchecked(&self.inverse())
            .mul_unchecked(&h.inverse()))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Disjoint cycles (1-based), each starting at its least point, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32 + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Sorted cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut lens = Vec::new();
        for start in 0..d {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            if len > 0 {
                lens.push(len);
            }
        }
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| acc / gcd(acc, l as u64) * l as u64)
    }

    fn check_degree(&self, other: &Self) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses with the degree inferred from the largest point mentioned.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let max = s
            .split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<u32>().ok())
            .max()
            .unwrap_or(0);
        Self::parse(s, max as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, 4).unwrap()
    }

    #[test]
    fn compose_left_to_right() {
        assert_eq!(p("(1 2)").compose(&p("(2 3)")).unwrap(), p("(1 3 2)"));
        assert_eq!(p("e").compose(&p("(1 2 3)")).unwrap(), p("(1 2 3)"));
        assert!(p("(1 2)").compose(&p("(1 2)")).unwrap().is_identity());
    }

    #[test]
    fn conjugate_relabels() {
        assert_eq!(p("(1 2)").conjugate(&p("(2 3)")).unwrap(), p("(1 3)"));
        assert_eq!(p("(1 2 4)").conjugate(&p("e")).unwrap(), p("(1 2 4)"));
        assert_eq!(p("(1 2 3)").conjugate(&p("(1 2 3)")).unwrap(), p("(1 2 3)"));
        // conj agrees with h^-1 g h
        let g = p("(1 2 3 4)");
        let h = p("(1 3)(2 4)");
        let direct = h.inverse().compose(&g).unwrap().compose(&h).unwrap();
        assert_eq!(g.conjugate(&h).unwrap(), direct);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = Permutation::parse("(1 2)", 3).unwrap();
        let b = Permutation::parse("(1 2)", 4).unwrap();
        assert!(matches!(a.compose(&b), Err(PermError::DegreeMismatch(3, 4))));
        assert!(a.conjugate(&b).is_err());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("(1,2)(3,4)").to_string(), "(1 2)(3 4)");
        assert_eq!(p("()").to_string(), "e");
        assert_eq!(p("(3 1 2)").to_string(), "(1 2 3)");
        assert!(Permutation::parse("(1 2", 3).is_err());
        assert!(Permutation::parse("(1 1)", 3).is_err());
        assert!(Permutation::parse("(1 5)", 3).is_err());
        assert!(Permutation::parse("(1 (2))", 3).is_err());
        assert_eq!("(1 2 3)".parse::<Permutation>().unwrap().degree(), 3);
    }

    #[test]
    fn order_and_cycle_type() {
        assert_eq!(p("(1 2)(3 4)").order(), 2);
        assert_eq!(p("(1 2 3)").cycle_type(), vec![1, 3]);
        assert_eq!(Permutation::parse("(1 2)(3 4 5)", 5).unwrap().order(), 6);
        assert_eq!(p("(1 2 3 4)").pow(4), p("e"));
        assert_eq!(p("(1 2 3 4)").pow(3), p("(1 2 3 4)").inverse());
    }

    #[test]
    fn commutator_convention() {
        let a = p("(1 3)");
        let b = p("(2 3)");
        let c = a
            .compose(&b)
            .unwrap()
            .compose(&a.inverse())
            .unwrap()
            .compose(&b.inverse())
            .unwrap();
        assert_eq!(a.commutator(&b).unwrap(), c);
    }
}
