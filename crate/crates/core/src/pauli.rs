//! Exact algebra of the n-qubit Pauli group.
//!
//! A [`PauliString`] is `i^k · σ(0) ⊗ … ⊗ σ(n-1)` with the per-qubit factor
//! encoded as an `(x, z)` bit pair: `(0,0)=I`, `(1,0)=X`, `(0,1)=Z`,
//! `(1,1)=Y`. Bits are packed 64 qubits per word so products and commutation
//! tests run word-parallel; phases stay exact as an exponent of `i` mod 4.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SinglePauli {
    I,
    X,
    Y,
    Z,
}

impl SinglePauli {
    pub const ALL: [SinglePauli; 4] = [SinglePauli::I, SinglePauli::X, SinglePauli::Y, SinglePauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => SinglePauli::I,
            (true, false) => SinglePauli::X,
            (true, true) => SinglePauli::Y,
            (false, true) => SinglePauli::Z,
        }
    }

    /// The `(x, z)` symplectic bits of this factor.
    pub fn bits(self) -> (bool, bool) {
        match self {
            SinglePauli::I => (false, false),
            SinglePauli::X => (true, false),
            SinglePauli::Y => (true, true),
            SinglePauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            SinglePauli::I => 'I',
            SinglePauli::X => 'X',
            SinglePauli::Y => 'Y',
            SinglePauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(SinglePauli::I),
            'X' => Some(SinglePauli::X),
            'Y' => Some(SinglePauli::Y),
            'Z' => Some(SinglePauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for SinglePauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// An element of the n-qubit Pauli group, `i^phase · ⊗_q σ(q)`.
///
/// Bits past `n` in the last word are always zero, so derived equality and
/// hashing are exact group-element equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    phase: u8,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl PauliString {
    /// The identity `+I⊗n`.
    pub fn identity(n: usize) -> Self {
        PauliString {
            n,
            phase: 0,
            x: vec![0; words_for(n)],
            z: vec![0; words_for(n)],
        }
    }

    /// `+P` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, pauli: SinglePauli) -> Result<Self> {
        let mut p = PauliString::identity(n);
        p.set(qubit, pauli)?;
        Ok(p)
    }

    pub fn from_factors(factors: &[SinglePauli]) -> Self {
        let mut p = PauliString::identity(factors.len());
        for (q, &f) in factors.iter().enumerate() {
            p.set_unchecked(q, f);
        }
        p
    }

    /// Builds a string from raw word masks. Bits at or beyond `n` must be clear.
    pub fn from_words(n: usize, phase_exp: u8, x: Vec<u64>, z: Vec<u64>) -> Result<Self> {
        let words = words_for(n);
        if x.len() != words || z.len() != words {
            return Err(Error::DimensionMismatch {
                expected: words * WORD_BITS,
                found: x.len().max(z.len()) * WORD_BITS,
            });
        }
        if words > 0 {
            let used = n - (words - 1) * WORD_BITS;
            if used < WORD_BITS && (x[words - 1] | z[words - 1]) >> used != 0 {
                return Err(Error::IndexOutOfRange {
                    what: "bit",
                    index: n,
                    len: n,
                });
            }
        }
        Ok(PauliString {
            n,
            phase: phase_exp & 3,
            x,
            z,
        })
    }

    /// Parses labels such as `"+XXI"`, `"-iYZ"` or `"ZZ"` (sign defaults to `+`).
    pub fn from_label(label: &str) -> Result<Self> {
        let err = |pos: usize, message: String| Error::Parse {
            line: 1,
            column: pos + 1,
            message,
        };
        let chars: Vec<char> = label.chars().collect();
        let mut pos = 0;
        let mut phase = 0u8;
        match chars.first() {
            Some('+') => pos = 1,
            Some('-') => {
                phase = 2;
                pos = 1;
            }
            _ => {}
        }
        if chars.get(pos) == Some(&'i') {
            if pos == 0 {
                return Err(err(
                    0,
                    "imaginary phase needs an explicit sign, e.g. `+i` or `-i`".into(),
                ));
            }
            phase = (phase + 1) & 3;
            pos += 1;
        }
        let body = &chars[pos..];
        if body.is_empty() {
            return Err(err(pos, "expected at least one Pauli factor".into()));
        }
        let mut p = PauliString::identity(body.len());
        p.phase = phase;
        for (q, &c) in body.iter().enumerate() {
            let f = SinglePauli::from_char(c).ok_or_else(|| err(pos + q, format!("invalid Pauli character `{c}`")))?;
            p.set_unchecked(q, f);
        }
        Ok(p)
    }

    /// Canonical label with explicit sign: `+XX`, `-YY`, `+iZ`, `-iXY`.
    pub fn to_label(&self) -> String {
        let mut s = String::with_capacity(self.n + 2);
        s.push_str(match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        });
        s.extend((0..self.n).map(|q| self.get(q).as_char()));
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Exponent `k` of the global phase `i^k`, in `0..4`.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn get(&self, qubit: usize) -> SinglePauli {
        let (w, b) = (qubit / WORD_BITS, qubit % WORD_BITS);
        SinglePauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, pauli: SinglePauli) -> Result<()> {
        if qubit >= self.n {
            return Err(Error::IndexOutOfRange {
                what: "qubit",
                index: qubit,
                len: self.n,
            });
        }
        self.set_unchecked(qubit, pauli);
        Ok(())
    }

    pub(crate) fn set_unchecked(&mut self, qubit: usize, pauli: SinglePauli) {
        let (w, b) = (qubit / WORD_BITS, qubit % WORD_BITS);
        let (xb, zb) = pauli.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn factors(&self) -> impl Iterator<Item = SinglePauli> + '_ {
        (0..self.n).map(|q| self.get(q))
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase = phase_exp & 3;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) & 3;
        self
    }

    /// Hermitian iff the global phase is real (`±1`).
    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    /// `+1` or `-1` for Hermitian strings, `None` for `±i`.
    pub fn sign(&self) -> Option<i8> {
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Same tensor factors, ignoring the phase.
    pub fn same_factors(&self, other: &PauliString) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    fn check_dims(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Group product `self · rhs` with exact phase.
    pub fn multiply(&self, rhs: &PauliString) -> Result<PauliString> {
        self.check_dims(rhs)?;
        let mut out = self.clone();
        out.mul_assign_right(rhs);
        Ok(out)
    }

    /// `self ← self · rhs`; lengths must already agree.
    pub(crate) fn mul_assign_right(&mut self, rhs: &PauliString) {
        debug_assert_eq!(self.n, rhs.n);
        let mut k = self.phase as u32 + rhs.phase as u32;
        for (w, (&x2, &z2)) in rhs.x.iter().zip(&rhs.z).enumerate() {
            let (x1, z1) = (self.x[w], self.z[w]);
            k += product_phase_word(x1, z1, x2, z2);
            self.x[w] = x1 ^ x2;
            self.z[w] = z1 ^ z2;
        }
        self.phase = (k & 3) as u8;
    }

    /// True iff the two strings commute (phases play no role).
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_dims(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliString) -> bool {
        let anti: u32 = self
            .x
            .iter()
            .zip(&self.z)
            .zip(other.x.iter().zip(&other.z))
            .map(|((x1, z1), (x2, z2))| ((x1 & z2) ^ (z1 & x2)).count_ones())
            .sum();
        anti.is_multiple_of(2)
    }

    /// Restriction to the listed qubits, in the listed order; phase is kept.
    pub fn restrict(&self, qubits: &[usize]) -> Result<PauliString> {
        let mut out = PauliString::identity(qubits.len());
        out.phase = self.phase;
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.n {
                return Err(Error::IndexOutOfRange {
                    what: "qubit",
                    index: q,
                    len: self.n,
                });
            }
            out.set_unchecked(i, self.get(q));
        }
        Ok(out)
    }
}

/// Phase exponent (mod 4, unreduced) picked up per word when multiplying
/// `σ(x1,z1)·σ(x2,z2)`. Writing `σ(x,z) = i^{xz} X^x Z^z`, the product is
/// `i^{x1z1 + x2z2 + 2 z1x2 - x3z3} σ(x3,z3)` with `(x3,z3) = (x1^x2, z1^z2)`.
#[inline]
pub(crate) fn product_phase_word(x1: u64, z1: u64, x2: u64, z2: u64) -> u32 {
    let (x3, z3) = (x1 ^ x2, z1 ^ z2);
    let plus = (x1 & z1).count_ones() + (x2 & z2).count_ones() + 2 * (z1 & x2).count_ones();
    // subtract x3z3 as +3·x3z3 mod 4
    plus + 3 * (x3 & z3).count_ones()
}

fn cmp_bits(a: &[u64], b: &[u64]) -> Ordering {
    for (&wa, &wb) in a.iter().zip(b) {
        let diff = wa ^ wb;
        if diff != 0 {
            let bit = diff.trailing_zeros();
            return if (wa >> bit) & 1 == 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
    }
    a.len().cmp(&b.len())
}

/// Lexicographic on `(z_bits, x_bits, phase_exp)`, bits compared in qubit
/// order with `0 < 1`.
impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| cmp_bits(&self.z, &other.z))
            .then_with(|| cmp_bits(&self.x, &other.x))
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_label())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({})", self.to_label())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PauliString::from_label(s)
    }
}

/// Multiplicative closure of a set of Pauli strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliGroup {
    /// Elements in canonical order.
    pub elements: Vec<PauliString>,
    /// Set when `-I` is in the group; such a group stabilizes no state.
    pub contains_minus_identity: bool,
}

impl PauliGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &PauliString) -> bool {
        self.elements.binary_search(p).is_ok()
    }
}

/// Closure of `generators` under multiplication, identity included.
/// Fails with a capacity error once more than `cap` elements are found.
pub fn group_closure(n: usize, generators: &[PauliString], cap: usize) -> Result<PauliGroup> {
    for g in generators {
        if g.num_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.num_qubits(),
            });
        }
    }
    let overflow = |requested| Error::Capacity {
        what: "group closure",
        requested,
        limit: cap,
    };
    let identity = PauliString::identity(n);
    let mut seen = BTreeSet::from([identity.clone()]);
    if seen.len() > cap {
        return Err(overflow(seen.len()));
    }
    let mut frontier = vec![identity.clone()];
    while let Some(elem) = frontier.pop() {
        for g in generators {
            let mut next = elem.clone();
            next.mul_assign_right(g);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(overflow(seen.len()));
                }
                frontier.push(next);
            }
        }
    }
    let contains_minus_identity = seen.contains(&identity.negated());
    Ok(PauliGroup {
        elements: seen.into_iter().collect(),
        contains_minus_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(label: &str) -> PauliString {
        PauliString::from_label(label).unwrap()
    }

    #[test]
    fn parses_phase_prefixes() {
        let xx = p("+XX");
        assert_eq!(xx.phase_exp(), 0);
        assert_eq!(xx.factors().collect::<Vec<_>>(), [SinglePauli::X, SinglePauli::X]);
        assert_eq!(p("-ZZ").phase_exp(), 2);
        let iy = p("+iY");
        assert_eq!(iy.phase_exp(), 1);
        assert_eq!(iy.get(0), SinglePauli::Y);
        assert_eq!(p("-iXYZ").phase_exp(), 3);
        assert_eq!(p("XZ"), p("+XZ"));
    }

    #[test]
    fn parse_errors_name_the_position() {
        match PauliString::from_label("+XQZ") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(PauliString::from_label("+"), Err(Error::Parse { .. })));
        assert!(matches!(
            PauliString::from_label("iX"),
            Err(Error::Parse { column: 1, .. })
        ));
        assert!(matches!(
            PauliString::from_label("*X"),
            Err(Error::Parse { column: 1, .. })
        ));
    }

    #[test]
    fn label_round_trip_is_canonical() {
        for label in ["+XX", "-YY", "+iZ", "-iXYZI", "+IIII"] {
            assert_eq!(p(label).to_label(), label);
        }
        assert_eq!(p("XY").to_label(), "+XY");
    }

    #[test]
    fn products_track_phase() {
        assert_eq!(p("X").multiply(&p("Z")).unwrap(), p("-iY"));
        assert_eq!(p("Z").multiply(&p("X")).unwrap(), p("+iY"));
        assert_eq!(p("ZZ").multiply(&p("ZZ")).unwrap(), p("+II"));
        assert_eq!(p("XX").multiply(&p("ZZ")).unwrap(), p("-YY"));
        assert!(matches!(
            p("X").multiply(&p("XX")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn commutation() {
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(!p("XI").commutes(&p("ZI")).unwrap());
        assert!(p("-iXYZ").commutes(&p("XYZ")).unwrap());
        assert!(p("X").commutes(&p("ZZ")).is_err());
    }

    #[test]
    fn weights_ignore_phase() {
        assert_eq!(p("III").weight(), 0);
        assert_eq!(p("ZZI").weight(), 2);
        assert_eq!(p("-iXYZ").weight(), 3);
    }

    #[test]
    fn closure_of_zz_generators() {
        let g = group_closure(3, &[p("ZZI"), p("IZZ")], 64).unwrap();
        let expected: BTreeSet<_> = ["+III", "+ZZI", "+IZZ", "+ZIZ"].into_iter().map(p).collect();
        assert_eq!(g.elements.iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert!(!g.contains_minus_identity);
    }

    #[test]
    fn closure_edge_cases() {
        let empty = group_closure(2, &[], 8).unwrap();
        assert_eq!(empty.elements, vec![p("II")]);

        let bell = group_closure(2, &[p("XX"), p("ZZ")], 8).unwrap();
        assert_eq!(bell.len(), 4);
        for e in ["+II", "+XX", "+ZZ", "-YY"] {
            assert!(bell.contains(&p(e)), "{e}");
        }

        let bad = group_closure(1, &[p("X"), p("Z")], 64).unwrap();
        // {±I, ±X, ±Z, ±iY}: X and Z never generate iI.
        assert!(bad.contains_minus_identity);
        assert_eq!(bad.len(), 8);
        assert!(bad.contains(&p("-iY")) && !bad.contains(&p("Y")));

        assert!(matches!(
            group_closure(1, &[p("X"), p("Z")], 4),
            Err(Error::Capacity { .. })
        ));
        assert!(group_closure(2, &[p("X")], 4).is_err());
    }

    #[test]
    fn canonical_order_is_z_then_x_then_phase() {
        let mut v = [p("XI"), p("IZ"), p("ZI"), p("II"), p("-II")];
        v.sort();
        let labels: Vec<_> = v.iter().map(|q| q.to_label()).collect();
        assert_eq!(labels, ["+II", "-II", "+XI", "+IZ", "+ZI"]);
    }

    #[test]
    fn wide_strings_cross_word_boundaries() {
        let mut a = PauliString::identity(130);
        let mut b = PauliString::identity(130);
        a.set(0, SinglePauli::X).unwrap();
        a.set(129, SinglePauli::X).unwrap();
        b.set(129, SinglePauli::Z).unwrap();
        b.set(64, SinglePauli::Y).unwrap();
        assert!(!a.commutes(&b).unwrap());
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab.phase_exp(), 3);
        assert_eq!(ab.get(129), SinglePauli::Y);
        assert_eq!(ab.weight(), 3);
        assert_eq!(PauliString::from_label(&ab.to_label()).unwrap(), ab);
    }

    #[test]
    fn restrict_picks_listed_qubits() {
        assert_eq!(p("-XYZ").restrict(&[2, 0]).unwrap(), p("-ZX"));
        assert!(p("XY").restrict(&[3]).is_err());
    }
}
