use std::fmt;
use std::str::FromStr;

use cds_core::{capacitated_domination, domination_count, weighted_domination, ProfitFn};

use crate::error::CliError;
use crate::instance::Instance;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Profile {
    #[default]
    Dom,
    Weighted,
    Capacitated,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Dom => "dom",
            Profile::Weighted => "weighted",
            Profile::Capacitated => "capacitated",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dom" => Ok(Profile::Dom),
            "weighted" => Ok(Profile::Weighted),
            "capacitated" => Ok(Profile::Capacitated),
            other => Err(format!("unknown profile `{other}` (dom, weighted, capacitated)")),
        }
    }
}

/// Profit function of `inst` under `profile`; weighted and capacitated
/// profiles need the matching vectors in the instance.
pub fn build_profile(inst: &Instance, profile: Profile) -> Result<Box<dyn ProfitFn + '_>, CliError> {
    let g = &inst.graph;
    Ok(match profile {
        Profile::Dom => Box::new(domination_count(g)),
        Profile::Weighted => {
            let w = inst
                .weights
                .clone()
                .ok_or_else(|| CliError::Usage("weighted profile needs an instance with weights".into()))?;
            Box::new(weighted_domination(g, w)?)
        }
        Profile::Capacitated => {
            let c = inst.capacities.clone().ok_or_else(|| {
                CliError::Usage("capacitated profile needs an instance with capacities".into())
            })?;
            Box::new(capacitated_domination(g, c)?)
        }
    })
}
