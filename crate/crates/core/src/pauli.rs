//! Exact algebra of n-qubit Pauli strings in binary symplectic form.
//!
//! A string is stored as a pair of bit masks (x, z) plus a global phase
//! exponent k, representing the operator i^k · L_1 ⊗ … ⊗ L_n where the
//! letter on qubit j is decoded from the mask bits: (0,0)=I, (1,0)=X,
//! (1,1)=Y, (0,1)=Z. Products compose by XOR on the masks while the
//! phase exponent absorbs the single-qubit corrections (e.g. X·Z = −iY),
//! so intermediate imaginary phases are tracked exactly.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Maximum qubit count representable by the fixed-width masks.
pub const MAX_QUBITS: usize = 16;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Phase exponent (power of i) picked up when multiplying two letters,
/// indexed by ax + 2·az + 4·bx + 8·bz. X·Y = iZ and cyclically; the
/// reversed orders contribute i³.
const LETTER_PHASE: [u8; 16] = {
    let mut t = [0u8; 16];
    t[2 + 4] = 1; // Z·X = +iY
    t[11] = 1; // Y·Z = +iX   (1+2 + 8)
    t[13] = 1; // X·Y = +iZ   (1 + 4+8)
    t[1 + 8] = 3; // X·Z = −iY
    t[7] = 3; // Y·X = −iZ   (1+2 + 4)
    t[14] = 3; // Z·Y = −iX   (2 + 4+8)
    t
};

/// An n-qubit Pauli operator with exact phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliString {
    n: u8,
    x: u16,
    z: u16,
    phase: u8,
}

impl PauliString {
    /// The identity on `n` qubits.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_QUBITS, "qubit count out of range");
        PauliString {
            n: n as u8,
            x: 0,
            z: 0,
            phase: 0,
        }
    }

    /// Builds a string from raw symplectic masks and a phase exponent.
    pub fn from_masks(n: usize, x: u16, z: u16, phase_exp: u8) -> Self {
        assert!(n >= 1 && n <= MAX_QUBITS, "qubit count out of range");
        let valid = if n == MAX_QUBITS { u16::MAX } else { (1 << n) - 1 };
        assert_eq!(x & !valid, 0, "x mask has bits beyond qubit count");
        assert_eq!(z & !valid, 0, "z mask has bits beyond qubit count");
        PauliString {
            n: n as u8,
            x,
            z,
            phase: phase_exp & 3,
        }
    }

    /// Builds a phase-free letter product; qubit 1 is `letters[0]`.
    pub fn from_letters(letters: &[Letter]) -> Self {
        assert!(!letters.is_empty() && letters.len() <= MAX_QUBITS);
        let mut x = 0u16;
        let mut z = 0u16;
        for (i, l) in letters.iter().enumerate() {
            match l {
                Letter::I => {}
                Letter::X => x |= 1 << i,
                Letter::Y => {
                    x |= 1 << i;
                    z |= 1 << i;
                }
                Letter::Z => z |= 1 << i,
            }
        }
        PauliString {
            n: letters.len() as u8,
            x,
            z,
            phase: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u16 {
        self.x
    }

    pub fn z_mask(&self) -> u16 {
        self.z
    }

    /// Phase exponent k of the global factor i^k, in {0,1,2,3}.
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    /// Mask of qubits carrying a non-identity letter.
    pub fn support(&self) -> u16 {
        self.x | self.z
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0 && self.phase == 0
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Operator product `self · other` with exact phase tracking.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let mut phase = (self.phase + other.phase) as u32;
        let mut overlap = (self.x | self.z) & (other.x | other.z);
        while overlap != 0 {
            let i = overlap.trailing_zeros();
            overlap &= overlap - 1;
            let idx = (((self.x >> i) & 1)
                | (((self.z >> i) & 1) << 1)
                | (((other.x >> i) & 1) << 2)
                | (((other.z >> i) & 1) << 3)) as usize;
            phase += LETTER_PHASE[idx] as u32;
        }
        Ok(PauliString {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: (phase & 3) as u8,
        })
    }

    /// True iff the symplectic inner product x₁·z₂ + z₁·x₂ vanishes mod 2.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        let s = (self.x & other.z).count_ones() + (self.z & other.x).count_ones();
        Ok(s % 2 == 0)
    }

    /// Letter on `qubit` (0-based).
    pub fn letter_at(&self, qubit: usize) -> Result<Letter> {
        if qubit >= self.n() {
            return Err(Error::QubitOutOfRange {
                qubit,
                n: self.n(),
            });
        }
        Ok(Letter::from_bits(
            (self.x >> qubit) & 1 == 1,
            (self.z >> qubit) & 1 == 1,
        ))
    }

    /// Sign of a Hermitian string: +1 for phase exponent 0, −1 for 2.
    pub fn hermitian_sign(&self) -> Result<i8> {
        match self.phase {
            0 => Ok(1),
            2 => Ok(-1),
            p => Err(Error::NonHermitian { phase_exp: p }),
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n()).map(move |q| {
            Letter::from_bits((self.x >> q) & 1 == 1, (self.z >> q) & 1 == 1)
        })
    }
}

impl fmt::Display for PauliString {
    /// Renders e.g. `-XYY`: sign (or `+i`/`-i`) then one letter per qubit,
    /// qubit 1 leftmost.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            0 => write!(f, "+")?,
            1 => write!(f, "+i")?,
            2 => write!(f, "-")?,
            _ => write!(f, "-i")?,
        }
        for l in self.letters() {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses the `Display` format; the sign prefix is optional, so
    /// `XZZ`, `+XZZ`, `-XYY` and `-iXZ` are all accepted.
    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let (phase, rest) = match bytes {
            [b'+', b'i', r @ ..] => (1, r),
            [b'-', b'i', r @ ..] => (3, r),
            [b'+', r @ ..] => (0, r),
            [b'-', r @ ..] => (2, r),
            [b'i', r @ ..] => (1, r),
            r => (0, r),
        };
        if rest.is_empty() || rest.len() > MAX_QUBITS {
            return Err(Error::Parse(format!("bad Pauli string `{s}`")));
        }
        let mut letters = Vec::with_capacity(rest.len());
        for b in rest {
            letters.push(match b {
                b'I' => Letter::I,
                b'X' => Letter::X,
                b'Y' => Letter::Y,
                b'Z' => Letter::Z,
                _ => return Err(Error::Parse(format!("bad Pauli letter in `{s}`"))),
            });
        }
        let mut p = PauliString::from_letters(&letters);
        p.phase = phase;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_products() {
        // XZ = −iY
        let r = p("X").multiply(&p("Z")).unwrap();
        assert_eq!(r.letter_at(0).unwrap(), Letter::Y);
        assert_eq!(r.phase_exp(), 3);
        // ZX = +iY
        let r = p("Z").multiply(&p("X")).unwrap();
        assert_eq!(r.phase_exp(), 1);
        // XY = +iZ, YZ = +iX
        assert_eq!(p("X").multiply(&p("Y")).unwrap(), p("iZ"));
        assert_eq!(p("Y").multiply(&p("Z")).unwrap(), p("iX"));
    }

    #[test]
    fn x_times_z_on_first_qubit() {
        let r = p("XI").multiply(&p("ZI")).unwrap();
        assert_eq!(r, p("-iYI"));
    }

    #[test]
    fn identity_is_unit() {
        let a = p("XZZ");
        let id = PauliString::identity(3);
        assert_eq!(a.multiply(&id).unwrap(), a);
        assert_eq!(id.multiply(&a).unwrap(), a);
    }

    #[test]
    fn ghz3_generator_product() {
        // (X₁Z₂Z₃)(Z₁X₂)(Z₁X₃) = −X₁Y₂Y₃
        let g1 = p("XZZ");
        let g2 = p("ZXI");
        let g3 = p("ZIX");
        let r = g1.multiply(&g2).unwrap().multiply(&g3).unwrap();
        assert_eq!(r, p("-XYY"));
        assert_eq!(r.phase_exp(), 2);
        assert_eq!(r.hermitian_sign().unwrap(), -1);
        assert_eq!(r.letter_at(2).unwrap(), Letter::Y);
    }

    #[test]
    fn commutation() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XZZ").commutes(&p("ZXI")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
    }

    #[test]
    fn hermitian_sign_rejects_odd_phase() {
        let r = p("X").multiply(&p("Z")).unwrap();
        assert!(matches!(
            r.hermitian_sign(),
            Err(Error::NonHermitian { phase_exp: 3 })
        ));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            p("X").multiply(&p("XX")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn letter_decoding() {
        let s = p("XZZ");
        assert_eq!(s.letter_at(1).unwrap(), Letter::Z);
        assert_eq!(PauliString::identity(4).letter_at(2).unwrap(), Letter::I);
        assert!(s.letter_at(3).is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["+XZZ", "-XYY", "+iXZ", "-iYI", "+IIII"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn self_product_is_identity() {
        for s in ["XZZ", "ZXI", "YYZ", "XYZ"] {
            let a = p(s);
            let sq = a.multiply(&a).unwrap();
            assert!(sq.is_identity());
        }
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}
