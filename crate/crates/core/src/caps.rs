//! Hard limits for the exhaustive enumerations. Exceeding a cap is a reported
//! error, never a silent truncation.

/// Resource limits shared by the ball/oracle/closure enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest admissible ball radius.
    pub max_radius: usize,
    /// Largest admissible number of enumerated elements (also bounds the
    /// rewriting closure of a single word).
    pub max_ball: usize,
    /// Overrides the per-q Weyl length cap of the twin-model enumerations.
    pub max_twin_len: Option<usize>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_radius: 12,
            max_ball: 1_000_000,
            max_twin_len: None,
        }
    }
}

impl Caps {
    /// Length cap for twin-model intersections at thickness parameter q.
    pub fn twin_len_cap(&self, q: u8) -> usize {
        if let Some(cap) = self.max_twin_len {
            return cap;
        }
        match q {
            2 => 4,
            3 => 3,
            _ => 2,
        }
    }
}
