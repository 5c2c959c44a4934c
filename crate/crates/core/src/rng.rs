//! Named random substreams.
//!
//! Every random draw in a simulation is keyed by
//! `(master_seed, point, trial, hop)`. Each key seeds its own ChaCha8
//! generator, so a draw never depends on how many other draws happened
//! before it or on which worker thread made it.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Which random quantity a substream feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum Hop {
    /// Fading between the base station and the surface.
    BsIrs = 0,
    /// Fading between the surface and the near user.
    IrsNear = 1,
    /// Fading between the surface and the far user.
    IrsFar = 2,
    /// Random phase configuration.
    Phases = 3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Substream {
    pub master_seed: u64,
    pub point: u64,
    pub trial: u64,
    pub hop: Hop,
}

impl Substream {
    pub fn new(master_seed: u64, point: u64, trial: u64, hop: Hop) -> Self {
        Substream {
            master_seed,
            point,
            trial,
            hop,
        }
    }

    pub fn with_hop(self, hop: Hop) -> Self {
        Substream { hop, ..self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut seed = [0u8; 32];
        let words = [self.master_seed, self.point, self.trial, self.hop as u64];
        for (chunk, word) in seed.chunks_exact_mut(8).zip(words) {
            chunk.copy_from_slice(&word.to_le_bytes());
        }
        ChaCha8Rng::from_seed(seed)
    }
}
