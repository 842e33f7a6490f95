use std::fmt;

use quartic_core::Error;

/// A failed command with its process exit code: 2 for bad input, 1 for
/// computations that could not complete.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn computation(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        use Error::*;
        let name = format!("{e:?}");
        let name = name.split(['(', ' ', '{']).next().unwrap_or_default().to_owned();
        let message = format!("{name}: {e}");
        match e {
            NotSquarefree(_) | InvalidD(_) | NotRealQuadratic | AbstractField | MissingTableEntry(_)
            | NotPrime(_) | FieldMismatch | InvalidBound | EquationFails | ExponentTooSmall(_)
            | NOrdTooLarge { .. } | InvalidN | NotIntegral(_) | SingularCurve | DegenerateSeed
            | DegenerateLambda | NotASolution | DegenerateTriple | InvalidArgument(_) => Failure::input(message),
            ZeroElement | DivisionByZero | DiscriminantTooLarge { .. } | BoxTooLarge { .. }
            | PreconditionFailed(_) | IncompleteProfiles(_) | WrongS | CutoffTooLarge { .. } => {
                Failure::computation(message)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_by_kind() {
        let f = Failure::from(Error::NotSquarefree(12));
        assert_eq!(f.code, 2);
        assert!(f.message.starts_with("NotSquarefree:"));
        assert_eq!(Failure::from(Error::BoxTooLarge { size: 9, ceiling: 1 }).code, 1);
        assert!(Failure::from(Error::NOrdTooLarge { prime: 2, ord: 8, p: 5 }).message.starts_with("NOrdTooLarge:"));
    }
}
