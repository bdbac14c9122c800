use std::path::PathBuf;

use clap::{Args, ValueEnum};
use pia2::complexes::HomotopyMode;
use pia2::linalg::Field;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    A2,
    Pia2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    Symbolic,
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Homotopy {
    Paper,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    F2,
    Q,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::F2 => Field::F2,
            FieldArg::Q => Field::Q,
        }
    }
}

impl From<Homotopy> for HomotopyMode {
    fn from(h: Homotopy) -> HomotopyMode {
        match h {
            Homotopy::Paper => HomotopyMode::Paper,
            Homotopy::Generic => HomotopyMode::Generic,
        }
    }
}

/// Flags shared by the computing commands.
#[derive(Args, Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Algebra::Pia2)]
    pub algebra: Algebra,
    #[arg(long, value_enum, default_value_t = BackendKind::Symbolic)]
    pub backend: BackendKind,
    #[arg(long, value_enum, default_value_t = Homotopy::Paper)]
    pub homotopy: Homotopy,
    #[arg(long, value_enum, default_value_t = FieldArg::F2)]
    pub field: FieldArg,
    /// Length of the truncated resolutions (matrix backend on pia2).
    #[arg(long, default_value_t = 24)]
    pub window: i64,
    #[arg(long, default_value_t = 4)]
    pub arity_max: usize,
    /// Bound on the degree of each input.
    #[arg(long, default_value_t = 4)]
    pub degree_max: i64,
    /// Where to write the JSON result; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            algebra: Algebra::Pia2,
            backend: BackendKind::Symbolic,
            homotopy: Homotopy::Paper,
            field: FieldArg::F2,
            window: 24,
            arity_max: 4,
            degree_max: 4,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn field(&self) -> Field {
        self.field.into()
    }

    pub fn mode(&self) -> HomotopyMode {
        self.homotopy.into()
    }

    /// The smallest window that keeps every operation in range away from the
    /// truncated end of the resolutions.
    pub fn window_min(&self) -> i64 {
        2 * self.degree_max + self.arity_max as i64 + 4
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.degree_max < 0 {
            return Err(CliError::Usage("--degree-max must be nonnegative".into()));
        }
        match (self.algebra, self.backend) {
            (Algebra::A2, BackendKind::Symbolic) => {
                return Err(CliError::Usage("the symbolic backend only covers pia2; use --backend matrix".into()))
            }
            (Algebra::Pia2, BackendKind::Symbolic) if self.field == FieldArg::Q => {
                return Err(CliError::Usage("the symbolic backend runs over f2; use --backend matrix for q".into()))
            }
            (Algebra::Pia2, BackendKind::Matrix) if self.window < self.window_min() => {
                return Err(CliError::Usage(format!(
                    "--window {} is too small for arity {} and degree {}: need at least {}",
                    self.window,
                    self.arity_max,
                    self.degree_max,
                    self.window_min()
                )))
            }
            _ => {}
        }
        Ok(())
    }

    pub fn backend_name(&self) -> &'static str {
        match self.backend {
            BackendKind::Symbolic => "symbolic",
            BackendKind::Matrix => "matrix",
        }
    }

    pub fn algebra_name(&self) -> &'static str {
        match self.algebra {
            Algebra::A2 => "a2",
            Algebra::Pia2 => "pia2",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let a2 = RunConfig { algebra: Algebra::A2, ..RunConfig::default() };
        assert!(matches!(a2.validate(), Err(CliError::Usage(_))));
        assert!(RunConfig { backend: BackendKind::Matrix, ..a2 }.validate().is_ok());
        let q = RunConfig { field: FieldArg::Q, ..RunConfig::default() };
        assert!(q.validate().is_err());
        let m = RunConfig { backend: BackendKind::Matrix, field: FieldArg::Q, ..RunConfig::default() };
        assert!(m.validate().is_ok());
        assert_eq!(m.window_min(), 16);
        assert!(RunConfig { window: 15, ..m.clone() }.validate().is_err());
        assert!(RunConfig { window: 16, ..m }.validate().is_ok());
    }
}
