use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use sha2::{Digest, Sha256};

/// Record written next to every artifact: what produced it and from what.
#[derive(Debug, Default)]
pub struct RunManifest {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub inputs: Vec<(PathBuf, String)>,
    pub outputs: Vec<(PathBuf, String)>,
    pub wall_time: Duration,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self { command: command.to_string(), ..Default::default() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push((path.to_path_buf(), sha256_hex(bytes)));
    }

    pub fn output(&mut self, path: &Path, bytes: &[u8]) {
        self.outputs.push((path.to_path_buf(), sha256_hex(bytes)));
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "tool = covercode {}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(s, "command = {}", self.command).unwrap();
        for (k, v) in &self.params {
            writeln!(s, "param {k} = {v}").unwrap();
        }
        if let Some(seed) = self.seed {
            writeln!(s, "seed = {seed}").unwrap();
        }
        for (p, d) in &self.inputs {
            writeln!(s, "input {} sha256 = {d}", p.display()).unwrap();
        }
        for (p, d) in &self.outputs {
            writeln!(s, "output {} sha256 = {d}", p.display()).unwrap();
        }
        writeln!(s, "wall_time_s = {:.3}", self.wall_time.as_secs_f64()).unwrap();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn render_lists_everything() {
        let mut m = RunManifest::new("lift");
        m.param("m", 2);
        m.seed = Some(7);
        m.output(Path::new("x.pcm"), b"abc");
        let text = m.render();
        assert!(text.contains("command = lift"));
        assert!(text.contains("param m = 2"));
        assert!(text.contains("seed = 7"));
        assert!(text.contains("output x.pcm sha256 = ba7816bf"));
    }
}
