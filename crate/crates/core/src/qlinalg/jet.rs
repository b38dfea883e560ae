use super::rat::Rat;

/// First-order jet `value + deriv·ε` with `ε² = 0`.
///
/// Running a rational pipeline over jets yields the exact directional
/// derivative of its output alongside the value.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Jet {
    pub value: Rat,
    pub deriv: Rat,
}

impl Jet {
    pub fn new(value: Rat, deriv: Rat) -> Self {
        Jet { value, deriv }
    }

    pub fn constant(value: Rat) -> Self {
        Jet { value, deriv: Rat::zero() }
    }

    /// The coordinate being differentiated: `value + ε`.
    pub fn variable(value: Rat) -> Self {
        Jet { value, deriv: Rat::one() }
    }
}
