//! Permutations of `[n]` with composition, sign, and factorial-base ranking.
//!
//! Vertices and values are 1-based throughout, matching the `[n]` convention
//! used for graphs. The composition order is fixed as
//! `(sigma ∘ pi)(x) = sigma(pi(x))`; in particular `sigma ∘ (i,j)` equals
//! `sigma` with the images at positions `i` and `j` swapped.

use std::fmt;

use crate::error::{Error, Result};

/// Factorials up to 20! (the largest that fits in a `u64`).
pub const FACTORIALS: [u64; 21] = {
    let mut t = [1u64; 21];
    let mut i = 1;
    while i <= 20 {
        t[i] = t[i - 1] * i as u64;
        i += 1;
    }
    t
};

/// `n!` for `n <= 20`.
pub fn factorial(n: usize) -> Option<u64> {
    FACTORIALS.get(n).copied()
}

/// A bijection on `[n]`, stored as the image array `image[i-1] = sigma(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub const MAX_N: usize = 20;

    pub fn identity(n: usize) -> Self {
        assert!(n <= Self::MAX_N);
        Self {
            image: (1..=n as u8).collect(),
        }
    }

    /// Builds a permutation from its image array, validating bijectivity.
    pub fn from_images(images: &[u8]) -> Result<Self> {
        let n = images.len();
        if n > Self::MAX_N {
            return Err(Error::InvalidParameter(format!(
                "permutation length {n} exceeds maximum {}",
                Self::MAX_N
            )));
        }
        let mut seen = vec![false; n];
        for &v in images {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidParameter(format!(
                    "image array {images:?} is not a bijection on 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Self {
            image: images.to_vec(),
        })
    }

    /// The transposition `(i,j)` on `[n]`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::InvalidParameter(format!(
                "transposition ({i},{j}) invalid on [{n}]"
            )));
        }
        let mut p = Self::identity(n);
        p.image.swap(i - 1, j - 1);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `sigma(i)` for 1-based `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.image
    }

    /// `sigma^{-1}(v)` for 1-based `v`.
    pub fn preimage(&self, v: usize) -> usize {
        debug_assert!(v >= 1 && v <= self.n());
        self.image.iter().position(|&x| x as usize == v).unwrap() + 1
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Self { image: inv }
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        let image = other
            .image
            .iter()
            .map(|&v| self.image[v as usize - 1])
            .collect();
        Ok(Self { image })
    }

    /// `self ∘ (i,j)`: the same placement with the images at positions `i`
    /// and `j` exchanged.
    pub fn swapped_at(&self, i: usize, j: usize) -> Self {
        let mut p = self.clone();
        p.image.swap(i - 1, j - 1);
        p
    }

    /// In-place variant of [`Self::swapped_at`].
    pub fn swap_positions(&mut self, i: usize, j: usize) {
        self.image.swap(i - 1, j - 1);
    }

    /// Sign via cycle decomposition parity: +1 for even, -1 for odd.
    pub fn sign(&self) -> i8 {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                cur = self.image[cur] as usize - 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Lexicographic Lehmer-code rank in `[0, n!)`. The identity ranks 0.
    pub fn rank(&self) -> u64 {
        rank_images(&self.image)
    }

    /// Inverse of [`Self::rank`].
    pub fn unrank(rank: u64, n: usize) -> Result<Self> {
        let total = factorial(n).ok_or_else(|| {
            Error::InvalidParameter(format!("n = {n} exceeds maximum {}", Self::MAX_N))
        })?;
        if rank >= total {
            return Err(Error::RankOutOfRange { rank, n });
        }
        let mut rest = rank;
        let mut used = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for i in 0..n {
            let f = FACTORIALS[n - 1 - i];
            let digit = (rest / f) as usize;
            rest %= f;
            // Select the digit-th unused value in increasing order.
            let mut count = 0usize;
            for (v, u) in used.iter_mut().enumerate() {
                if !*u {
                    if count == digit {
                        *u = true;
                        image.push((v + 1) as u8);
                        break;
                    }
                    count += 1;
                }
            }
        }
        Ok(Self { image })
    }
}

/// Rank an image array directly; used by the state-space search to rank
/// neighbors without allocating intermediate permutations.
#[inline]
pub fn rank_images(image: &[u8]) -> u64 {
    let n = image.len();
    debug_assert!(n <= 20);
    let mut rank = 0u64;
    let mut used: u64 = 0; // bit v-1 set once value v has appeared
    for (i, &v) in image.iter().enumerate() {
        let v0 = v as u32 - 1;
        let smaller_used = (used & ((1u64 << v0) - 1)).count_ones();
        let digit = v0 - smaller_used;
        rank += digit as u64 * FACTORIALS[n - 1 - i];
        used |= 1u64 << v0;
    }
    rank
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the one-line notation `[3,1,2]` (brackets optional).
impl std::str::FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        if inner.trim().is_empty() {
            return Err(Error::Parse(format!("empty permutation: {s:?}")));
        }
        let images = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(&images)
    }
}
