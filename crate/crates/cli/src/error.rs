use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Precondition(#[from] aperiodica::Error),
    #[error("internal check failed: {0}")]
    CheckFailed(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::Precondition(aperiodica::Error::Parse(_)) => 1,
            CliError::Precondition(_) => 2,
            CliError::CheckFailed(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 1);
        assert_eq!(CliError::from(aperiodica::Error::Parse("x".into())).exit_code(), 1);
        assert_eq!(CliError::from(aperiodica::Error::Precondition("x".into())).exit_code(), 2);
        assert_eq!(CliError::CheckFailed("ordering".into()).exit_code(), 3);
    }
}
