//! Deterministic sample generation.

use alloc::vec::Vec;

use num_complex::Complex64;

/// An axis-aligned rectangle `[x_min, x_max] × [y_min, y_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    /// `None` unless both extents are finite and non-empty.
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Option<Self> {
        let ok = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite()) && x_min < x_max && y_min < y_max;
        ok.then_some(Window {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    pub fn square(half: f64) -> Self {
        Window {
            x_min: -half,
            x_max: half,
            y_min: -half,
            y_max: half,
        }
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }
}

/// splitmix64 (Steele, Lea, Flood): a 64-bit state advanced by a Weyl
/// increment and finalised with two xor-shift-multiply rounds.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next_f64() * (hi - lo)
    }
}

/// `count` points drawn uniformly from `window`, reproducible from `seed`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub seed: u64,
    pub count: usize,
    pub window: Window,
    pub points: Vec<Complex64>,
}

impl SampleSet {
    pub fn generate(seed: u64, count: usize, window: Window) -> Self {
        let mut rng = SplitMix64::new(seed);
        let points = (0..count)
            .map(|_| {
                let re = rng.uniform(window.x_min, window.x_max);
                let im = rng.uniform(window.y_min, window.y_max);
                Complex64::new(re, im)
            })
            .collect();
        SampleSet {
            seed,
            count,
            window,
            points,
        }
    }

    /// A set holding exactly the given points (window = their bounding box,
    /// padded when degenerate).
    pub fn from_points(points: Vec<Complex64>) -> Self {
        let mut w = Window {
            x_min: f64::INFINITY,
            x_max: f64::NEG_INFINITY,
            y_min: f64::INFINITY,
            y_max: f64::NEG_INFINITY,
        };
        for p in &points {
            w.x_min = w.x_min.min(p.re);
            w.x_max = w.x_max.max(p.re);
            w.y_min = w.y_min.min(p.im);
            w.y_max = w.y_max.max(p.im);
        }
        if points.is_empty() {
            w = Window::square(1.0);
        }
        if w.x_min == w.x_max {
            w.x_max += 1.0;
        }
        if w.y_min == w.y_max {
            w.y_max += 1.0;
        }
        SampleSet {
            seed: 0,
            count: points.len(),
            window: w,
            points,
        }
    }
}
