//! Run configuration: defaults, overridden by a `key=value` file, overridden by flags.

use serde::Serialize;

use crate::error::CliError;
use crate::eval::EvalOptions;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub max_group_order: Option<u128>,
    pub max_ring_size: usize,
    pub so_enum_cap: usize,
    /// Zero means one worker per core.
    pub workers: usize,
    pub hints: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let opts = EvalOptions::default();
        RunConfig {
            max_group_order: None,
            max_ring_size: opts.max_ring_size,
            so_enum_cap: opts.so_enum_cap,
            workers: 0,
            hints: true,
        }
    }
}

/// Values given on the command line; `None` leaves the lower layers alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub max_group_order: Option<u128>,
    pub max_ring_size: Option<usize>,
    pub so_enum_cap: Option<usize>,
    pub workers: Option<usize>,
    pub no_hints: bool,
}

impl RunConfig {
    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |why: &str| CliError::Config { line: n + 1, message: why.to_string() };
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            let number = || value.parse::<usize>().map_err(|_| bad(&format!("`{value}` is not a number")));
            match key {
                "max-group-order" => self.max_group_order = Some(number()? as u128),
                "max-ring-size" => self.max_ring_size = number()?,
                "so-enum-cap" => self.so_enum_cap = number()?,
                "workers" => self.workers = number()?,
                "hints" => self.hints = value.parse().map_err(|_| bad(&format!("`{value}` is not true or false")))?,
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
        }
        Ok(())
    }

    pub fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(v) = o.max_group_order {
            self.max_group_order = Some(v);
        }
        if let Some(v) = o.max_ring_size {
            self.max_ring_size = v;
        }
        if let Some(v) = o.so_enum_cap {
            self.so_enum_cap = v;
        }
        if let Some(v) = o.workers {
            self.workers = v;
        }
        if o.no_hints {
            self.hints = false;
        }
    }

    pub fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            so_enum_cap: self.so_enum_cap,
            max_ring_size: self.max_ring_size,
            use_hints: self.hints,
            ..EvalOptions::default()
        }
    }

    /// Runs `f` on a pool with the configured number of workers.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(pool.install(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_beats_defaults() {
        let mut c = RunConfig::default();
        c.apply_file("# caps\nso-enum-cap = 20\nmax-group-order=8\nhints=false\n").unwrap();
        assert_eq!((c.so_enum_cap, c.max_group_order, c.hints), (20, Some(8), false));
        c.apply_overrides(&Overrides { so_enum_cap: Some(12), ..Overrides::default() });
        assert_eq!(c.so_enum_cap, 12);
        assert_eq!(c.max_group_order, Some(8));
        assert_eq!(c.max_ring_size, EvalOptions::default().max_ring_size);
        assert!(!c.eval_options().use_hints);
    }

    #[test]
    fn bad_lines_are_reported() {
        let mut c = RunConfig::default();
        assert!(matches!(c.apply_file("workers=2\nspeed=9"), Err(CliError::Config { line: 2, .. })));
        assert!(c.apply_file("workers").is_err());
        assert!(c.apply_file("workers=many").is_err());
    }
}
