/// Arithmetic mean and population standard deviation of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
    pub n: usize,
}

impl Stat {
    /// Two-pass mean/std over `samples`, summed in iteration order.
    pub fn from_samples<I>(samples: I) -> Stat
    where
        I: Iterator<Item = f64> + Clone,
    {
        let (sum, n) = samples.clone().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
        if n == 0 {
            return Stat {
                mean: f64::NAN,
                std: f64::NAN,
                n: 0,
            };
        }
        let mean = sum / n as f64;
        let ss: f64 = samples.map(|x| (x - mean) * (x - mean)).sum();
        Stat {
            mean,
            std: (ss / n as f64).sqrt(),
            n,
        }
    }

    /// Standard error of the mean.
    pub fn sem(&self) -> f64 {
        self.std / (self.n as f64).sqrt()
    }
}
