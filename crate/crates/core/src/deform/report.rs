use crate::ring::Monomial;

/// Value observed at a failing witness.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessValue {
    Op(crate::DiffOp),
    Func(crate::ring::Poly),
}

impl std::fmt::Display for WitnessValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessValue::Op(d) => write!(f, "{d}"),
            WitnessValue::Func(p) => write!(f, "{p}"),
        }
    }
}

/// A failing check: the monomial exponents of the arguments and the defect there.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub args: Vec<Monomial>,
    pub value: WitnessValue,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub order: usize,
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Outcome of a structural verification, one record per check and λ-order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn push(&mut self, name: &str, order: usize, witness: Option<Witness>) {
        self.checks.push(CheckRecord { name: name.to_string(), order, passed: witness.is_none(), witness });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

pub(crate) fn op_witness(c: &crate::Cochain) -> Option<Witness> {
    c.witness().map(|(args, v)| Witness { args, value: WitnessValue::Op(v) })
}

pub(crate) fn func_witness(c: &crate::BaseCochain) -> Option<Witness> {
    c.witness().map(|(args, v)| Witness { args, value: WitnessValue::Func(v) })
}
