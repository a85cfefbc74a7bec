use std::fmt;

/// Both evaluated sides of an identity, kept so a failing check can report
/// its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity<T> {
    pub lhs: T,
    pub rhs: T,
}

impl<T: PartialEq> Identity<T> {
    pub fn new(lhs: T, rhs: T) -> Self {
        Identity { lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl<T: fmt::Display> fmt::Display for Identity<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lhs = {}, rhs = {}", self.lhs, self.rhs)
    }
}
