//! CSV writers and readers for the column data the tool emits.
//!
//! Every file starts with an optional `# key = value` comment block carrying
//! the fully resolved run configuration, then one header line, then rows.
//! Floats are printed with Rust's shortest round-trip `Display`, so output is
//! deterministic and re-reads bit-exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::background::{BackgroundProfile, Grid1D};
use crate::decompose::ModeSplit;
use crate::dispersion::DispersionRoots;
use crate::error::{Error, Result};
use crate::fields::{FieldState, PhysicalState};

/// Ordered `key = value` pairs emitted as the comment block.
pub type Meta = Vec<(String, String)>;

pub fn meta_for(profile: &BackgroundProfile) -> Meta {
    let p = &profile.params;
    vec![
        ("gamma".into(), p.gamma.to_string()),
        ("g".into(), p.g.to_string()),
        ("H0".into(), p.h0.to_string()),
        ("alphaH0".into(), p.alpha_h0.to_string()),
        ("h".into(), p.h.to_string()),
        ("rho0".into(), p.rho0.to_string()),
        ("n".into(), profile.grid.n.to_string()),
    ]
}

fn render(meta: &Meta, header: &str, rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = String::new();
    for (k, v) in meta {
        let _ = writeln!(out, "# {k} = {v}");
    }
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{v}");
            first = false;
        }
        out.push('\n');
    }
    out
}

fn save(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content)
        .map_err(|e| Error::NumericalFailure(format!("write {}: {e}", path.display())))
}

pub fn write_profile(path: &Path, profile: &BackgroundProfile, meta: &Meta) -> Result<()> {
    let g = &profile.grid;
    let rows = (0..g.n).map(|i| {
        vec![
            g.z[i],
            profile.h_scale[i],
            profile.eta[i],
            profile.nu[i],
            profile.rho_bar[i],
            profile.p_bar[i],
            profile.w[i],
        ]
    });
    save(path, &render(meta, "z,H,eta,nu,rho_bar,p_bar,w", rows))
}

pub fn write_field(path: &Path, state: &FieldState, meta: &Meta) -> Result<()> {
    let g = &state.grid;
    let rows = (0..g.n).map(|i| vec![g.z[i], state.uz[i], state.p[i], state.phi[i]]);
    save(path, &render(meta, "z,Uz,P,Phi", rows))
}

pub fn write_physical(path: &Path, phys: &PhysicalState, meta: &Meta) -> Result<()> {
    let g = &phys.grid;
    let rows = (0..g.n).map(|i| {
        vec![
            g.z[i],
            phys.vz[i],
            phys.p_prime[i],
            phys.phi_prime[i],
            phys.rho_prime[i],
        ]
    });
    save(path, &render(meta, "z,Vz,p_prime,phi_prime,rho_prime", rows))
}

pub fn write_modesplit(path: &Path, split: &ModeSplit, meta: &Meta) -> Result<()> {
    let g = &split.acoustic.grid;
    let rows = (0..g.n).map(|i| {
        vec![
            g.z[i],
            split.acoustic.uz[i],
            split.acoustic.p[i],
            split.acoustic.phi[i],
            split.entropy.p[i],
            split.entropy.phi[i],
        ]
    });
    save(path, &render(meta, "z,Uz_a,P_a,Phi_a,P_0,Phi_0", rows))
}

/// One row per retained snapshot of an evolution run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRow {
    pub t: f64,
    pub e_total: f64,
    pub e_kinetic: f64,
    pub e_baro: f64,
    pub e_thermal: f64,
    pub e_acoustic: f64,
    pub e_entropy: f64,
    pub cross: f64,
}

pub fn write_energy_log(path: &Path, rows: &[EnergyRow], meta: &Meta) -> Result<()> {
    let it = rows.iter().map(|r| {
        vec![
            r.t, r.e_total, r.e_kinetic, r.e_baro, r.e_thermal, r.e_acoustic, r.e_entropy, r.cross,
        ]
    });
    save(
        path,
        &render(
            meta,
            "t,E_total,E_kinetic,E_baro,E_thermal,E_acoustic,E_entropy,cross",
            it,
        ),
    )
}

pub fn write_dispersion(path: &Path, rows: &[DispersionRoots], meta: &Meta) -> Result<()> {
    let it = rows
        .iter()
        .map(|r| vec![r.k[0], r.k[1], r.k[2], r.omega12, r.omega34]);
    save(path, &render(meta, "kx,ky,kz,omega1,omega3", it))
}

/// Parsed CSV: the comment metadata, the header names, and the columns.
#[derive(Debug, Clone)]
pub struct Table {
    pub meta: Meta,
    pub header: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.header
            .iter()
            .position(|h| h == name)
            .map(|i| self.columns[i].as_slice())
            .ok_or_else(|| Error::InvalidParameter(format!("missing column '{name}'")))
    }
}

pub fn read_table(path: &Path) -> Result<Table> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("read {}: {e}", path.display())))?;
    let mut meta = Meta::new();
    let mut header: Option<Vec<String>> = None;
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                meta.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        match &header {
            None => {
                let names: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
                columns = vec![Vec::new(); names.len()];
                header = Some(names);
            }
            Some(names) => {
                let vals: Vec<&str> = line.split(',').collect();
                if vals.len() != names.len() {
                    return Err(Error::InvalidParameter(format!(
                        "{}:{}: expected {} fields, got {}",
                        path.display(),
                        lineno + 1,
                        names.len(),
                        vals.len()
                    )));
                }
                for (col, v) in columns.iter_mut().zip(vals) {
                    let x: f64 = v.trim().parse().map_err(|_| {
                        Error::InvalidParameter(format!(
                            "{}:{}: bad number '{v}'",
                            path.display(),
                            lineno + 1
                        ))
                    })?;
                    col.push(x);
                }
            }
        }
    }
    let header = header
        .ok_or_else(|| Error::InvalidParameter(format!("{}: no header line", path.display())))?;
    Ok(Table {
        meta,
        header,
        columns,
    })
}

/// Reconstruct a transformed field from a `z,Uz,P,Phi` table. The grid is
/// rebuilt from the z column and must be uniform.
pub fn field_from_table(table: &Table) -> Result<FieldState> {
    let z = table.column("z")?;
    let n = z.len();
    if n < 16 {
        return Err(Error::InvalidParameter(format!(
            "field table has only {n} rows"
        )));
    }
    let grid = Arc::new(Grid1D::new(z[n - 1], n)?);
    for (i, (&zi, &gi)) in z.iter().zip(&grid.z).enumerate() {
        if (zi - gi).abs() > 1e-9 * (1.0 + gi.abs()) {
            return Err(Error::InvalidParameter(format!(
                "z column is not uniform at row {i}: {zi} vs {gi}"
            )));
        }
    }
    FieldState::new(
        grid,
        table.column("Uz")?.to_vec(),
        table.column("P")?.to_vec(),
        table.column("Phi")?.to_vec(),
        0.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::background::AtmosphereParams;

    fn profile() -> BackgroundProfile {
        BackgroundProfile::build(&AtmosphereParams::default(), 64).unwrap()
    }

    #[test]
    fn field_round_trip_is_bit_exact() {
        let p = profile();
        let n = p.grid.n;
        let state = FieldState::new(
            p.grid.clone(),
            p.grid.z.iter().map(|&z| (1.234_567_890_123 * z).sin()).collect(),
            p.grid.z.iter().map(|&z| (0.1 * z).exp()).collect(),
            vec![std::f64::consts::PI; n],
            0.0,
        )
        .unwrap();
        let dir = std::env::temp_dir().join("stratwave-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("field.csv");
        write_field(&path, &state, &meta_for(&p)).unwrap();
        let table = read_table(&path).unwrap();
        let back = field_from_table(&table).unwrap();
        for i in 0..n {
            assert_eq!(back.uz[i], state.uz[i]);
            assert_eq!(back.p[i], state.p[i]);
            assert_eq!(back.phi[i], state.phi[i]);
        }
        assert!(table.meta.iter().any(|(k, v)| k == "gamma" && v == "1.4"));
    }

    #[test]
    fn repeated_writes_are_identical() {
        let p = profile();
        let dir = std::env::temp_dir().join("stratwave-io-test");
        fs::create_dir_all(&dir).unwrap();
        let (a, b) = (dir.join("p1.csv"), dir.join("p2.csv"));
        write_profile(&a, &p, &meta_for(&p)).unwrap();
        write_profile(&b, &p, &meta_for(&p)).unwrap();
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }

    #[test]
    fn reader_rejects_ragged_rows_and_missing_column() {
        let dir = std::env::temp_dir().join("stratwave-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.csv");
        fs::write(&path, "a,b\n1,2\n3\n").unwrap();
        assert!(read_table(&path).is_err());
        fs::write(&path, "a,b\n1,2\n").unwrap();
        let t = read_table(&path).unwrap();
        assert!(t.column("c").is_err());
        assert_eq!(t.column("b").unwrap(), &[2.0]);
    }

    #[test]
    fn header_names_are_pinned() {
        let p = profile();
        let dir = std::env::temp_dir().join("stratwave-io-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("prof.csv");
        write_profile(&path, &p, &Meta::new()).unwrap();
        let first = fs::read_to_string(&path).unwrap().lines().next().unwrap().to_string();
        assert_eq!(first, "z,H,eta,nu,rho_bar,p_bar,w");
    }
}
