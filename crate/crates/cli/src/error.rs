use spinorlab_core::SpinorError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Math(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Math(_) => 2,
            CliError::Verification(_) | CliError::Internal(_) => 3,
        }
    }
}

impl From<SpinorError> for CliError {
    fn from(e: SpinorError) -> Self {
        use SpinorError::*;
        match e {
            NotPure | NotMaximal { .. } | WrongComponent | NotInSecantVariety(_) | UnsupportedField(_)
            | TooFewDecompositions { .. } | EqualInputs => CliError::Math(e.to_string()),
            Internal(_) | MissingFactor(_) | NonzeroConstantTerm(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
