use std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Nats,
    Bits,
}

impl Unit {
    pub fn from_flag(bits: bool) -> Self {
        if bits {
            Unit::Bits
        } else {
            Unit::Nats
        }
    }

    pub fn convert(self, nats: f64) -> f64 {
        match self {
            Unit::Nats => nats,
            Unit::Bits => nats / LN_2,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Unit::Nats => "nats",
            Unit::Bits => "bits",
        }
    }
}

/// `x` with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // The exponent of the correctly rounded mantissa, so that a carry
    // (9.99… → 10.0…) is accounted for.
    let sci = format!("{x:.11e}");
    let exponent: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    let decimals = 11 - exponent;
    if (0..=17).contains(&decimals) {
        format!("{x:.prec$}", prec = decimals as usize)
    } else {
        sci
    }
}

/// Shortest decimal that parses back to `x`.
pub fn shortest(x: f64) -> String {
    format!("{x}")
}

pub fn optional(x: Option<f64>) -> String {
    x.map_or_else(String::new, shortest)
}
