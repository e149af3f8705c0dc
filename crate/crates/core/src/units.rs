// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

//! Unit-tagged quantities for the floorplan and power arithmetic.
//!
//! Only the products that the scaling model needs are implemented, so a
//! dimensionally wrong expression fails to compile.

use std::ops::{Add, Div, Mul};

use serde::{Deserialize, Serialize};

macro_rules! quantity {
    ($name:ident, $unit:literal) => {
        #[doc = concat!("Quantity in ", $unit, ".")]
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub f64);

        impl $name {
            pub fn value(self) -> f64 {
                self.0
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl Mul<f64> for $name {
            type Output = $name;
            fn mul(self, rhs: f64) -> $name {
                $name(self.0 * rhs)
            }
        }

        impl Div<f64> for $name {
            type Output = $name;
            fn div(self, rhs: f64) -> $name {
                $name(self.0 / rhs)
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "{} {}", self.0, $unit)
            }
        }
    };
}

quantity!(Micrometers, "um");
quantity!(SquareMicrometers, "um^2");
quantity!(SquareCentimeters, "cm^2");
quantity!(Joules, "J");
quantity!(Watts, "W");
quantity!(Hertz, "Hz");

pub const UM2_PER_CM2: f64 = 1.0e8;

impl Micrometers {
    pub fn from_nm(nm: f64) -> Self {
        Micrometers(nm * 1.0e-3)
    }

    pub fn from_cm(cm: f64) -> Self {
        Micrometers(cm * 1.0e4)
    }
}

impl Mul for Micrometers {
    type Output = SquareMicrometers;
    fn mul(self, rhs: Micrometers) -> SquareMicrometers {
        SquareMicrometers(self.0 * rhs.0)
    }
}

impl SquareMicrometers {
    pub fn to_cm2(self) -> SquareCentimeters {
        SquareCentimeters(self.0 / UM2_PER_CM2)
    }
}

impl Joules {
    pub fn from_aj(aj: f64) -> Self {
        Joules(aj * crate::consts::AJ)
    }
}

/// Energy per event times event rate.
impl Mul<Hertz> for Joules {
    type Output = Watts;
    fn mul(self, rhs: Hertz) -> Watts {
        Watts(self.0 * rhs.0)
    }
}
