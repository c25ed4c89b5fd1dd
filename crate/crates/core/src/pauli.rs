use std::fmt;

use crate::gf2::BitVec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// Hermitian Pauli operator with a ±1 sign.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub x: BitVec,
    pub z: BitVec,
    pub negative: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            negative: false,
        }
    }

    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        p.set(qubit, letter);
        p
    }

    /// Product of one letter over the listed qubits, e.g. `X` on {0, 2, 3}.
    pub fn uniform(n: usize, qubits: impl IntoIterator<Item = usize>, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        for q in qubits {
            p.set(q, letter);
        }
        p
    }

    pub fn parse(s: &str) -> Option<Self> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let n = body.chars().count();
        let mut p = Self::identity(n);
        p.negative = negative;
        for (i, c) in body.chars().enumerate() {
            let l = match c {
                'I' | '_' | '.' => Letter::I,
                'X' => Letter::X,
                'Y' => Letter::Y,
                'Z' => Letter::Z,
                _ => return None,
            };
            p.set(i, l);
        }
        Some(p)
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn get(&self, q: usize) -> Letter {
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, l: Letter) {
        let (x, z) = l.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn weight(&self) -> usize {
        (0..self.len()).filter(|&q| self.get(q) != Letter::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        self.x.and_parity(&other.z) == other.x.and_parity(&self.z)
    }

    /// Multiply in place by `other` (self := self · other), tracking sign.
    /// Both operators must commute for the result to stay Hermitian.
    pub fn mul_assign(&mut self, other: &PauliString) {
        // Phase exponent of i accumulated per qubit.
        let mut phase: i32 = 0;
        for q in 0..self.len() {
            let (x1, z1) = (self.x.get(q) as i32, self.z.get(q) as i32);
            let (x2, z2) = (other.x.get(q) as i32, other.z.get(q) as i32);
            phase += match (x1, z1) {
                (0, 0) => 0,
                (1, 1) => z2 - x2,
                (1, 0) => z2 * (2 * x2 - 1),
                _ => x2 * (1 - 2 * z2),
            };
        }
        let mut total = phase + 2 * (self.negative as i32) + 2 * (other.negative as i32);
        total = total.rem_euclid(4);
        debug_assert!(total % 2 == 0, "product of anticommuting Paulis");
        self.negative = total == 2;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Concatenated `[x | z]` bits, ignoring sign.
    pub fn to_bits(&self) -> BitVec {
        let n = self.len();
        let mut v = BitVec::zeros(2 * n);
        for q in 0..n {
            v.set(q, self.x.get(q));
            v.set(n + q, self.z.get(q));
        }
        v
    }

    pub fn from_bits(bits: &BitVec) -> Self {
        let n = bits.len() / 2;
        let mut p = Self::identity(n);
        for q in 0..n {
            p.x.set(q, bits.get(q));
            p.z.set(q, bits.get(n + q));
        }
        p
    }

    pub fn letters(&self) -> String {
        (0..self.len()).map(|q| self.get(q).symbol()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { "-" } else { "+" }, self.letters())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical generating set of the group spanned by `gens`, ignoring signs.
pub fn canonical_group(gens: &[PauliString]) -> Vec<PauliString> {
    let bits: Vec<BitVec> = gens.iter().map(|g| g.to_bits()).collect();
    crate::gf2::rref(&bits)
        .iter()
        .map(PauliString::from_bits)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_follow_pauli_algebra() {
        // X·Z = -iY is not Hermitian, so use commuting products.
        let mut a = PauliString::parse("XX").unwrap();
        a.mul_assign(&PauliString::parse("ZZ").unwrap());
        assert_eq!(a.to_string(), "-YY");
        let mut b = PauliString::parse("XI").unwrap();
        b.mul_assign(&PauliString::parse("XZ").unwrap());
        assert_eq!(b.to_string(), "+IZ");
    }

    #[test]
    fn commutation_by_parity() {
        let a = PauliString::parse("XXI").unwrap();
        assert!(a.commutes_with(&PauliString::parse("ZZI").unwrap()));
        assert!(!a.commutes_with(&PauliString::parse("ZII").unwrap()));
    }
}
