//! Binary judgments over an ordered agenda.
//!
//! A judgment is stored as a bitmask whose most significant used bit is the
//! first agenda issue, so numeric order on equal-width judgments coincides
//! with the ascending order of their bitstring text form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Widest agenda a [`Judgment`] can represent.
pub const MAX_ISSUES: usize = 64;

/// A complete yes/no opinion on each of `len` issues.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Judgment {
    len: u8,
    bits: u64,
}

impl Judgment {
    /// All-rejecting judgment on `m` issues.
    pub fn zeros(m: usize) -> Result<Self> {
        check_width(m)?;
        Ok(Judgment { len: m as u8, bits: 0 })
    }

    /// The judgment whose bitstring, read as a binary numeral, equals `index`.
    pub fn from_index(m: usize, index: u64) -> Result<Self> {
        check_width(m)?;
        if m < 64 && index >> m != 0 {
            return Err(Error::InvalidBitstring {
                text: format!("{index:#b}"),
                reason: "index does not fit the agenda width",
            });
        }
        Ok(Judgment {
            len: m as u8,
            bits: index,
        })
    }

    pub fn from_bools(values: &[bool]) -> Result<Self> {
        check_width(values.len())?;
        let bits = values.iter().fold(0u64, |acc, &v| (acc << 1) | u64::from(v));
        Ok(Judgment {
            len: values.len() as u8,
            bits,
        })
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Canonical index, i.e. the bitstring read as a binary numeral.
    pub fn index(&self) -> u64 {
        self.bits
    }

    /// Acceptance of issue `k` (0-based, first issue is `k = 0`).
    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len(), "issue {k} out of range for width {}", self.len);
        self.bits >> (self.len() - 1 - k) & 1 == 1
    }

    /// Copy of `self` with issue `k` set to `value`.
    pub fn with(self, k: usize, value: bool) -> Self {
        assert!(k < self.len(), "issue {k} out of range for width {}", self.len);
        let mask = 1u64 << (self.len() - 1 - k);
        let bits = if value { self.bits | mask } else { self.bits & !mask };
        Judgment { bits, ..self }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |k| self.get(k))
    }

    /// Number of accepted issues.
    pub fn accepted(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// The bit-flipped judgment.
    pub fn antipodal(&self) -> Self {
        Judgment {
            len: self.len,
            bits: !self.bits & width_mask(self.len()),
        }
    }

    /// Hamming distance; `None` when the widths differ.
    pub fn checked_distance(&self, other: &Judgment) -> Option<usize> {
        (self.len == other.len).then(|| (self.bits ^ other.bits).count_ones() as usize)
    }

    /// Hamming distance between equal-width judgments.
    ///
    /// Width agreement is an invariant of every validated domain and profile,
    /// so the hot loops use this unchecked form.
    #[inline]
    pub(crate) fn distance(&self, other: &Judgment) -> usize {
        debug_assert_eq!(self.len, other.len);
        (self.bits ^ other.bits).count_ones() as usize
    }

    /// Every judgment on `m` issues in ascending order.
    pub fn all(m: usize) -> Result<impl Iterator<Item = Judgment>> {
        check_width(m)?;
        if m >= 64 {
            return Err(Error::TooManyIssues { max: 63, actual: m });
        }
        Ok((0..1u64 << m).map(move |bits| Judgment { len: m as u8, bits }))
    }
}

/// Number of issues on which `a` and `b` disagree.
pub fn hamming(a: &Judgment, b: &Judgment) -> Result<usize> {
    a.checked_distance(b).ok_or(Error::DimensionMismatch {
        expected: a.len(),
        actual: b.len(),
    })
}

/// The judgment that flips every issue of `a`.
pub fn antipodal(a: &Judgment) -> Judgment {
    a.antipodal()
}

fn width_mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

fn check_width(m: usize) -> Result<()> {
    if m > MAX_ISSUES {
        Err(Error::TooManyIssues {
            max: MAX_ISSUES,
            actual: m,
        })
    } else {
        Ok(())
    }
}

impl FromStr for Judgment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidBitstring {
                text: s.into(),
                reason: "empty",
            });
        }
        let values = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBitstring {
                    text: s.into(),
                    reason: "only '0' and '1' are allowed",
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Judgment::from_bools(&values)
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.iter() {
            f.write_str(if v { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Judgment({self})")
    }
}

impl Serialize for Judgment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Judgment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn j(s: &str) -> Judgment {
        s.parse().unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(&j("100"), &j("111")).unwrap(), 2);
        assert_eq!(hamming(&j("110000"), &j("001100")).unwrap(), 4);
        assert_eq!(hamming(&j("0101"), &j("0101")).unwrap(), 0);
    }

    #[test]
    fn hamming_rejects_width_mismatch() {
        assert_eq!(
            hamming(&j("10"), &j("100")),
            Err(Error::DimensionMismatch { expected: 2, actual: 3 })
        );
    }

    #[test]
    fn antipodal_examples() {
        assert_eq!(j("111").antipodal(), j("000"));
        assert_eq!(j("00000").antipodal(), j("11111"));
    }

    #[test]
    fn text_form_is_leftmost_first() {
        let a = j("100");
        assert!(a.get(0));
        assert!(!a.get(2));
        assert_eq!(a.index(), 4);
        assert_eq!(a.to_string(), "100");
        assert_eq!(a.with(2, true).to_string(), "101");
    }

    #[test]
    fn ordering_matches_bitstring_order() {
        let mut v: Vec<Judgment> = ["111", "010", "000", "100"].iter().map(|s| j(s)).collect();
        v.sort();
        let text: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(text, ["000", "010", "100", "111"]);
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<Judgment>().is_err());
        assert!("10a".parse::<Judgment>().is_err());
        assert!("1".repeat(65).parse::<Judgment>().is_err());
        assert_eq!("1".repeat(64).parse::<Judgment>().unwrap().accepted(), 64);
    }

    #[test]
    fn antipodal_is_involution_exhaustive() {
        for m in 1..=12 {
            for a in Judgment::all(m).unwrap() {
                assert_eq!(a.antipodal().antipodal(), a);
            }
        }
    }

    fn judgment_triple() -> impl Strategy<Value = (Judgment, Judgment, Judgment)> {
        (1usize..=64).prop_flat_map(|m| {
            let mask = width_mask(m);
            (any::<u64>(), any::<u64>(), any::<u64>()).prop_map(move |(a, b, c)| {
                let mk = |bits: u64| Judgment::from_index(m, bits & mask).unwrap();
                (mk(a), mk(b), mk(c))
            })
        })
    }

    proptest! {
        #[test]
        fn hamming_is_a_metric((a, b, c) in judgment_triple()) {
            let d = |x: &Judgment, y: &Judgment| hamming(x, y).unwrap();
            prop_assert_eq!(d(&a, &b), d(&b, &a));
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
            prop_assert_eq!(d(&a, &b) == 0, a == b);
        }

        #[test]
        fn antipodal_mirrors_distances((a, b, c) in judgment_triple()) {
            let m = a.len();
            let bar = a.antipodal();
            prop_assert_eq!(bar.antipodal(), a);
            prop_assert_eq!(hamming(&bar, &b).unwrap(), m - hamming(&a, &b).unwrap());
            // distance order flips under the antipode
            let closer = hamming(&a, &b).unwrap() > hamming(&a, &c).unwrap();
            let mirrored = hamming(&bar, &b).unwrap() < hamming(&bar, &c).unwrap();
            prop_assert_eq!(closer, mirrored);
        }
    }
}
