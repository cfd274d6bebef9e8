//! Tower symbols: the base element x, iterated logarithms, and generic
//! antiderivative / exponential-of-integral symbols.

use crate::constfield::{Const, ConstVec};
use std::fmt;

/// An iterated logarithm labelled by its shift vector; level 0 is x itself.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct LogSym {
    shifts: ConstVec,
}

impl PartialOrd for LogSym {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogSym {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.level()
            .cmp(&other.level())
            .then_with(|| self.shifts.cmp(&other.shifts))
    }
}

impl LogSym {
    pub fn x() -> LogSym {
        LogSym {
            shifts: ConstVec::empty(),
        }
    }

    pub fn new(shifts: ConstVec) -> LogSym {
        LogSym { shifts }
    }

    pub fn level(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_x(&self) -> bool {
        self.shifts.is_empty()
    }

    pub fn shifts(&self) -> &ConstVec {
        &self.shifts
    }

    /// The outermost shift constant (psi of the vector).
    pub fn outer_shift(&self) -> Option<Const> {
        self.shifts.last().ok()
    }

    /// pi^k: drop the outermost k logarithms; clamps to x.
    pub fn project(&self, k: usize) -> LogSym {
        LogSym {
            shifts: self.shifts.project(k),
        }
    }

    /// Wrap in one more logarithm with the given shift.
    pub fn raise(&self, shift: Const) -> LogSym {
        LogSym {
            shifts: self.shifts.push(shift),
        }
    }
}

impl fmt::Display for LogSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = "x".to_string();
        for c in &self.shifts.0 {
            s = format!("ln({}{})", s, c.to_suffix());
        }
        write!(f, "{}", s)
    }
}

/// A tower symbol. The `Ord` impl is the global symbol order used by the
/// monomial order, fixing-form reduction and serialization.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum SymId {
    /// x or an iterated logarithm.
    Log(LogSym),
    /// A generic antiderivative, by name.
    Anti(String),
    /// A generic exponential of an integral, by name.
    Expo(String),
}

impl SymId {
    pub fn x() -> SymId {
        SymId::Log(LogSym::x())
    }

    pub fn log(sym: LogSym) -> SymId {
        SymId::Log(sym)
    }

    pub fn anti(name: &str) -> SymId {
        SymId::Anti(name.to_string())
    }

    pub fn expo(name: &str) -> SymId {
        SymId::Expo(name.to_string())
    }

    pub fn is_x(&self) -> bool {
        matches!(self, SymId::Log(l) if l.is_x())
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self, SymId::Expo(_))
    }

    pub fn as_log(&self) -> Option<&LogSym> {
        match self {
            SymId::Log(l) => Some(l),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            SymId::Log(_) => 0,
            SymId::Anti(_) => 1,
            SymId::Expo(_) => 2,
        }
    }
}

impl PartialOrd for SymId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SymId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (SymId::Log(a), SymId::Log(b)) => a
                .level()
                .cmp(&b.level())
                .then_with(|| a.shifts().cmp(b.shifts())),
            (SymId::Anti(a), SymId::Anti(b)) => a.cmp(b),
            (SymId::Expo(a), SymId::Expo(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for SymId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymId::Log(l) => write!(f, "{}", l),
            SymId::Anti(n) | SymId::Expo(n) => write!(f, "{}", n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lvec(cs: Vec<Const>) -> LogSym {
        LogSym::new(ConstVec(cs))
    }

    #[test]
    fn projection_levels() {
        let e = Const::atom("e").unwrap();
        let y = lvec(vec![e, Const::from_integer(5)]); // ln(ln(x+e)+5)
        assert_eq!(y.level(), 2);
        let p = y.project(1); // ln(x+e)
        assert_eq!(p.level(), 1);
        assert_eq!(y.project(2), LogSym::x());
        assert_eq!(y.project(7), LogSym::x());
        assert_eq!(LogSym::x().project(3), LogSym::x());
    }

    #[test]
    fn display_matches_input_syntax() {
        let e = Const::atom("e").unwrap();
        let y = lvec(vec![e, Const::from_integer(5)]);
        assert_eq!(y.to_string(), "ln(ln(x+@e)+5)");
        assert_eq!(lvec(vec![Const::zero()]).to_string(), "ln(x)");
        assert_eq!(lvec(vec![Const::i().neg()]).to_string(), "ln(x-i)");
        assert_eq!(
            lvec(vec![Const::from_integer(5).add(&Const::i())]).to_string(),
            "ln(x+5+i)"
        );
        assert_eq!(LogSym::x().to_string(), "x");
    }

    #[test]
    fn symbol_order_is_by_level_first() {
        let l1 = SymId::log(lvec(vec![Const::from_integer(9)]));
        let l2 = SymId::log(lvec(vec![Const::zero(), Const::zero()]));
        assert!(SymId::x() < l1);
        assert!(l1 < l2);
    }

    #[test]
    fn distinct_shift_vectors_distinct_symbols() {
        let a = lvec(vec![Const::from_integer(1)]);
        let b = lvec(vec![Const::from_ratio(2, 2)]);
        assert_eq!(a, b); // 1 = 2/2 after normalization
        let c = lvec(vec![Const::from_integer(2)]);
        assert_ne!(a, c);
    }
}
