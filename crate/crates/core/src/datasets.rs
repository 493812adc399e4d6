//! The two reference datasets shipped with the library.

use serde::Serialize;

use crate::grid::ControlPolygon;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dataset {
    pub id: u8,
    pub name: &'static str,
    pub tau: &'static [f64],
    #[serde(rename = "F")]
    pub values: &'static [f64],
}

impl Dataset {
    pub fn control_polygon(&self) -> ControlPolygon {
        ControlPolygon::new(self.tau.to_vec(), self.values.to_vec())
            .expect("embedded dataset is valid")
    }
}

/// Eleven points on `[1, 11]` with a tall spike at `tau = 9`.
pub const SPIKE: Dataset = Dataset {
    id: 1,
    name: "net function on [1, 11]",
    tau: &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0],
    values: &[1.0, 3.0, 3.0, 1.0, 2.0, 7.0, 1.5, 1.0, 10.0, 2.0, 1.5],
};

/// Eleven points on the semicircle `y = sqrt(x - x^2)`, ordinates kept
/// exactly as tabulated (to 9-10 significant digits).
pub const SEMICIRCLE: Dataset = Dataset {
    id: 2,
    name: "semicircle y = sqrt(x - x^2) on [0, 1]",
    tau: &[0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0],
    values: &[
        0.0,
        0.3,
        0.4,
        0.458257569,
        0.489897949,
        0.5,
        0.4898979495,
        0.458257569,
        0.4,
        0.3,
        0.0,
    ],
};

pub fn example(id: u8) -> Option<Dataset> {
    match id {
        1 => Some(SPIKE),
        2 => Some(SEMICIRCLE),
        _ => None,
    }
}
