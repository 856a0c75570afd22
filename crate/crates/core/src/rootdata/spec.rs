use serde::{Deserialize, Serialize};

use super::datum::{BasedRootDatum, Isogeny};
use super::matrix::IMat;
use super::twist::Twist;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IsogenySpec {
    Named(String),
    Basis { basis: IMat },
}

/// JSON description of a group: Cartan type, isogeny, twist and central torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub isogeny: IsogenySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<usize>>,
    #[serde(default)]
    pub central_torus_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central_twist: Option<IMat>,
}

impl GroupSpec {
    pub fn new(cartan_type: &str, isogeny: &str, twist: Option<Vec<usize>>) -> Self {
        GroupSpec {
            cartan_type: cartan_type.into(),
            isogeny: IsogenySpec::Named(isogeny.into()),
            twist,
            central_torus_rank: 0,
            central_twist: None,
        }
    }

    pub fn isogeny(&self) -> Result<Isogeny> {
        match &self.isogeny {
            IsogenySpec::Named(s) if s == "sc" => Ok(Isogeny::SimplyConnected),
            IsogenySpec::Named(s) if s == "ad" => Ok(Isogeny::Adjoint),
            IsogenySpec::Named(s) => Err(Error::InvalidInput(format!("unknown isogeny {s:?}"))),
            IsogenySpec::Basis { basis } => Ok(Isogeny::Basis(basis.clone())),
        }
    }

    pub fn build(&self) -> Result<(BasedRootDatum, Twist)> {
        let datum = BasedRootDatum::build(&self.cartan_type, &self.isogeny()?, self.central_torus_rank)?;
        let twist = match &self.twist {
            Some(p) => Twist::from_diagram(&datum, p, self.central_twist.as_ref())?,
            None if self.central_twist.is_some() => {
                let id: Vec<usize> = (0..datum.semisimple_rank()).collect();
                Twist::from_diagram(&datum, &id, self.central_twist.as_ref())?
            }
            None => Twist::identity(&datum),
        };
        Ok((datum, twist))
    }

    /// Built-in groups by short name.
    pub fn builtin(name: &str) -> Option<Self> {
        let s = match name {
            "SL2" => Self::new("A1", "sc", None),
            "PGL2" => Self::new("A1", "ad", None),
            "SL3" => Self::new("A2", "sc", None),
            "PGL3" => Self::new("A2", "ad", None),
            "Sp4" => Self::new("C2", "sc", None),
            "SO5" => Self::new("B2", "ad", None),
            "G2" => Self::new("G2", "ad", None),
            "ResA1" => Self::new("A1xA1", "ad", Some(vec![1, 0])),
            "SU3" => Self::new("A2", "sc", Some(vec![1, 0])),
            "PU3" => Self::new("A2", "ad", Some(vec![1, 0])),
            "PU4" => Self::new("A3", "ad", Some(vec![2, 1, 0])),
            "3D4" => Self::new("D4", "ad", Some(vec![2, 1, 3, 0])),
            "GL1" => GroupSpec { central_torus_rank: 1, ..Self::new("", "ad", None) },
            // SL2 x GL1: same roots and central torus as GL2, up to isogeny
            "GL2" => GroupSpec { central_torus_rank: 1, ..Self::new("A1", "sc", None) },
            "U1" => GroupSpec { central_torus_rank: 1, central_twist: Some(vec![vec![-1]]), ..Self::new("", "ad", None) },
            _ => return None,
        };
        Some(s)
    }

    pub const BUILTIN_NAMES: [&'static str; 15] =
        ["SL2", "PGL2", "SL3", "PGL3", "Sp4", "SO5", "G2", "ResA1", "SU3", "PU3", "PU4", "3D4", "GL1", "GL2", "U1"];

    /// Semisimple groups the verification suites run over.
    pub const SUITE_NAMES: [&'static str; 11] = ["SL2", "PGL2", "SL3", "PGL3", "Sp4", "SO5", "G2", "ResA1", "PU3", "PU4", "3D4"];
}
