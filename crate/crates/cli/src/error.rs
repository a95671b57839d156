use furstenberg_core::algebra::{AlgebraError, GroupError};
use furstenberg_core::codes::CodeError;
use furstenberg_core::recurrence::RecurrenceError;
use furstenberg_core::rotation::RotationError;
use furstenberg_core::systems::SystemError;
use furstenberg_core::zshift::ZshiftError;

/// Exit 2 for bad input, 3 for requests beyond a computational bound.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Bound(_) => 3,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn context(self, ctx: &str) -> Self {
        match self {
            CliError::Input(m) => CliError::Input(format!("{ctx}: {m}")),
            CliError::Bound(m) => CliError::Bound(format!("{ctx}: {m}")),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderBoundExceeded { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ZshiftError> for CliError {
    fn from(e: ZshiftError) -> Self {
        match e {
            ZshiftError::BoundsExceeded(_) | ZshiftError::WindowTooLarge { .. } => CliError::Bound(e.to_string()),
            ZshiftError::Rotation(r) => r.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RotationError> for CliError {
    fn from(e: RotationError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::BoundsExceeded(_) => CliError::Bound(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<RecurrenceError> for CliError {
    fn from(e: RecurrenceError) -> Self {
        match e {
            RecurrenceError::BoundsExceeded(_) => CliError::Bound(e.to_string()),
            RecurrenceError::Oracle(z) => z.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SystemError> for CliError {
    fn from(e: SystemError) -> Self {
        match e {
            SystemError::Group(g) => g.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}
