use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{construct, count_classes, identify, ClassLabel};
use crate::isomind::{brute_force_iso, IsoError};
use crate::liealg::LieAlgebra;

use super::{EnumError, TableSpace};

/// Tables kept per bucket for later checks.
const SAMPLES: usize = 10;
/// Leading constants fixed per work unit.
const PREFIX: usize = 8;

/// Tables sharing one canonical label.
#[derive(Clone, Debug)]
pub struct Bucket {
    pub label: ClassLabel,
    pub count: u64,
    pub samples: Vec<LieAlgebra>,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub dim: usize,
    pub q: u64,
    /// Solvable tables seen.
    pub tables: u64,
    /// Keyed by label text.
    pub buckets: BTreeMap<String, Bucket>,
}

impl Census {
    pub fn classes(&self) -> usize {
        self.buckets.len()
    }

    pub fn expected(&self) -> Result<u64, EnumError> {
        Ok(count_classes(self.dim, self.q)?)
    }

    /// Checks up to `per_bucket` samples of every bucket against the
    /// constructed representative, and consecutive samples against each
    /// other, by exhaustive search. Returns the offending labels.
    pub fn spot_check(&self, per_bucket: usize) -> Result<Vec<String>, IsoError> {
        let checks: Vec<(String, bool)> = self
            .buckets
            .par_iter()
            .map(|(key, b)| {
                let rep = construct(&b.label).expect("census labels are admissible");
                let s = &b.samples[..b.samples.len().min(per_bucket)];
                let mut ok = true;
                for (i, l) in s.iter().enumerate() {
                    ok &= brute_force_iso(&rep, l)?.is_some();
                    if i > 0 {
                        ok &= brute_force_iso(&s[i - 1], l)?.is_some();
                    }
                }
                Ok((key.clone(), ok))
            })
            .collect::<Result<_, IsoError>>()?;
        Ok(checks.into_iter().filter(|(_, ok)| !ok).map(|(k, _)| k).collect())
    }

    fn absorb(&mut self, other: Census, rng: &mut ChaCha8Rng) {
        self.tables += other.tables;
        for (key, b) in other.buckets {
            match self.buckets.get_mut(&key) {
                None => {
                    self.buckets.insert(key, b);
                }
                Some(mine) => {
                    mine.count += b.count;
                    mine.samples.extend(b.samples);
                    while mine.samples.len() > SAMPLES {
                        let i = rng.gen_range(0..mine.samples.len());
                        mine.samples.swap_remove(i);
                    }
                }
            }
        }
    }
}

/// Identifies every solvable table and counts tables per canonical label.
/// `workers` sets the thread count (default: all cores). The result does
/// not depend on it.
pub fn census(dim: usize, q: u64, workers: Option<usize>) -> Result<Census, EnumError> {
    let space = TableSpace::new(dim, q)?;
    let total = space.size();
    let free = space.constants().saturating_sub(PREFIX).max(space.constants() / 2);
    let chunk = (q).pow(free as u32);
    let units: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    let empty = || Census { dim, q, tables: 0, buckets: BTreeMap::new() };

    let run = || -> Result<Vec<Census>, EnumError> {
        units
            .par_iter()
            .map(|&u| {
                let mut part = empty();
                let mut rng = ChaCha8Rng::seed_from_u64(u);
                for l in space.solvable_in(u * chunk..((u + 1) * chunk).min(total)) {
                    let label = identify(&l)?;
                    part.tables += 1;
                    let b = part.buckets.entry(label.to_string()).or_insert_with(|| Bucket { label, count: 0, samples: Vec::new() });
                    b.count += 1;
                    // Reservoir sampling.
                    if b.samples.len() < SAMPLES {
                        b.samples.push(l);
                    } else {
                        let r = rng.gen_range(0..b.count);
                        if (r as usize) < SAMPLES {
                            b.samples[r as usize] = l;
                        }
                    }
                }
                Ok(part)
            })
            .collect()
    };
    let parts = match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| EnumError::Pool(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let mut out = empty();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for p in parts {
        out.absorb(p, &mut rng);
    }
    Ok(out)
}
