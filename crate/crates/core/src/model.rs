//! The three amplifier models and how each treats a pumped junction.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::specfun::{bessel_j012, quartic_j012};

/// Amplifier model compared in the gain profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelVariant {
    /// Full cosine potential of both the JPA and the transformer chain.
    FullSineIEJPA,
    /// Quartic JPA nonlinearity with a linear transformer inductance.
    QuarticIEJPA,
    /// JPA with full cosine potential loading the line directly.
    BareJpaFullSine,
}

impl ModelVariant {
    pub const ALL: [ModelVariant; 3] = [
        ModelVariant::FullSineIEJPA,
        ModelVariant::QuarticIEJPA,
        ModelVariant::BareJpaFullSine,
    ];

    /// Short name used on the command line and in config files.
    pub fn name(self) -> &'static str {
        match self {
            ModelVariant::FullSineIEJPA => "full",
            ModelVariant::QuarticIEJPA => "quartic",
            ModelVariant::BareJpaFullSine => "bare",
        }
    }

    pub fn circuit(self) -> Circuit {
        match self {
            ModelVariant::FullSineIEJPA => Circuit {
                topology: Topology::Engineered,
                jpa: JunctionModel::FullSine,
                transformer: JunctionModel::FullSine,
            },
            ModelVariant::QuarticIEJPA => Circuit {
                topology: Topology::Engineered,
                jpa: JunctionModel::Quartic,
                transformer: JunctionModel::Linear,
            },
            ModelVariant::BareJpaFullSine => Circuit {
                topology: Topology::Bare,
                jpa: JunctionModel::FullSine,
                transformer: JunctionModel::Linear,
            },
        }
    }
}

impl fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "full" => Ok(ModelVariant::FullSineIEJPA),
            "quartic" => Ok(ModelVariant::QuarticIEJPA),
            "bare" => Ok(ModelVariant::BareJpaFullSine),
            other => Err(Error::Config(format!(
                "unknown model `{other}` (expected full, quartic or bare)"
            ))),
        }
    }
}

/// Whether the transformer sits between the line and the JPA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Engineered,
    Bare,
}

/// Response of a pumped junction: the `[J₀, J₁, J₂]` triple it contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JunctionModel {
    FullSine,
    /// Fourth-order expansion of the cosine.
    Quartic,
    /// Harmonic: `J₀ → 1`, `J₁ → A/2`, `J₂ → 0`.
    Linear,
}

impl JunctionModel {
    pub fn j012(self, a: f64) -> [f64; 3] {
        match self {
            JunctionModel::FullSine => bessel_j012(a),
            JunctionModel::Quartic => quartic_j012(a),
            JunctionModel::Linear => [1.0, a / 2.0, 0.0],
        }
    }

    /// `J₁(A)/A`, finite at `A = 0`.
    pub fn j1_over_a(self, a: f64) -> f64 {
        if a == 0.0 {
            return 0.5;
        }
        match self {
            JunctionModel::Linear => 0.5,
            JunctionModel::Quartic => 0.5 - a * a / 16.0,
            JunctionModel::FullSine => bessel_j012(a)[1] / a,
        }
    }
}

/// A complete choice of topology and junction treatment.
///
/// [`ModelVariant`] covers the named models; other combinations (notably
/// the fully linear circuit) are useful as analytic checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Circuit {
    pub topology: Topology,
    pub jpa: JunctionModel,
    pub transformer: JunctionModel,
}

impl Circuit {
    /// Every junction harmonic; the pump equations become linear.
    pub fn linearized(topology: Topology) -> Self {
        Circuit {
            topology,
            jpa: JunctionModel::Linear,
            transformer: JunctionModel::Linear,
        }
    }
}

impl From<ModelVariant> for Circuit {
    fn from(model: ModelVariant) -> Self {
        model.circuit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for m in ModelVariant::ALL {
            assert_eq!(m.name().parse::<ModelVariant>().unwrap(), m);
        }
        assert!("kerr".parse::<ModelVariant>().is_err());
    }

    #[test]
    fn j1_over_a_limits() {
        for m in [
            JunctionModel::FullSine,
            JunctionModel::Quartic,
            JunctionModel::Linear,
        ] {
            assert_eq!(m.j1_over_a(0.0), 0.5);
            let a = 1e-6;
            assert!((m.j1_over_a(a) - 0.5).abs() < 1e-12);
            let a = 1.3;
            assert!((m.j1_over_a(a) * a - m.j012(a)[1]).abs() < 1e-15);
        }
    }
}
