use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use quasinichols::cohomology::{CSeq, Cocycle3};
use quasinichols::group::FAGroup;
use quasinichols::ydmod::{make_character_simple, make_simple_rank3, YDModule};
use quasinichols::Cyclo;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub factors: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSection {
    /// Flat c-sequence: singles, then pairs, then triples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<u64>>,
    /// Named entries such as `"1"`, `"12"`, `"123"`; missing names are zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModuleSpec {
    Rank3 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        roles: [usize; 3],
        alpha: String,
        beta: String,
        gamma: String,
    },
    Character {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
        degree: Vec<u64>,
        chi: Vec<String>,
    },
}

impl ModuleSpec {
    pub fn label(&self) -> Option<&str> {
        match self {
            ModuleSpec::Rank3 { label, .. } | ModuleSpec::Character { label, .. } => label.as_deref(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub group: GroupSection,
    #[serde(default)]
    pub cocycle: CocycleSection,
    #[serde(default, rename = "module", skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleSpec>,
    #[serde(default)]
    pub options: Options,
}

/// The validated objects an instance describes.
pub struct Instance {
    pub file: InstanceFile,
    pub group: FAGroup,
    pub cocycle: Arc<Cocycle3>,
    pub module: Option<YDModule>,
}

pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    toml::from_str(text).map_err(|e| anyhow!("parse error: {e}"))
}

pub fn emit_instance(file: &InstanceFile) -> Result<String> {
    Ok(toml::to_string(file)?)
}

fn scalar(field: &str, s: &str) -> Result<Cyclo> {
    if s.contains('.') || s.contains('e') && !s.contains("zeta") {
        bail!("{field}: '{s}' is not exact; write roots of unity as zeta(N)^k");
    }
    Cyclo::parse(s).with_context(|| format!("{field}: cannot read '{s}'"))
}

fn cseq(g: &FAGroup, sec: &CocycleSection) -> Result<Vec<u64>> {
    let names = CSeq::names(g);
    match (&sec.c, &sec.entries) {
        (Some(_), Some(_)) => bail!("cocycle: give either `c` or `entries`, not both"),
        (Some(c), None) => Ok(c.clone()),
        (None, Some(entries)) => {
            let mut flat = vec![0; names.len()];
            for (k, v) in entries {
                let pos = names
                    .iter()
                    .position(|n| n == k)
                    .ok_or_else(|| anyhow!("cocycle.entries: unknown coefficient '{k}' (known: {})", names.join(", ")))?;
                flat[pos] = *v;
            }
            Ok(flat)
        }
        (None, None) => Ok(vec![0; names.len()]),
    }
}

impl InstanceFile {
    pub fn build(&self) -> Result<Instance> {
        let group = FAGroup::new(self.group.factors.clone()).context("group")?;
        let flat = cseq(&group, &self.cocycle)?;
        let cocycle = Arc::new(Cocycle3::from_flat(&group, &flat).context("cocycle")?);
        let mut parts = Vec::new();
        for (idx, m) in self.modules.iter().enumerate() {
            let at = format!("module[{idx}]");
            let s = match m {
                ModuleSpec::Rank3 { roles, alpha, beta, gamma, .. } => make_simple_rank3(
                    &group,
                    cocycle.clone(),
                    (roles[0], roles[1], roles[2]),
                    scalar(&format!("{at}.alpha"), alpha)?,
                    scalar(&format!("{at}.beta"), beta)?,
                    scalar(&format!("{at}.gamma"), gamma)?,
                ),
                ModuleSpec::Character { degree, chi, .. } => {
                    let exps: Vec<i64> = degree.iter().map(|&x| x as i64).collect();
                    let deg = group.element(&exps).with_context(|| format!("{at}.degree"))?;
                    if chi.len() != group.rank() {
                        bail!("{at}.chi: expected {} values, one per generator", group.rank());
                    }
                    let vals = chi
                        .iter()
                        .enumerate()
                        .map(|(i, s)| scalar(&format!("{at}.chi[{i}]"), s))
                        .collect::<Result<Vec<_>>>()?;
                    make_character_simple(&group, cocycle.clone(), &deg, &vals)
                }
            }
            .with_context(|| at.clone())?;
            parts.push(s);
        }
        let module = if parts.is_empty() { None } else { Some(YDModule::direct_sum(parts)?) };
        Ok(Instance { file: self.clone(), group, cocycle, module })
    }
}

impl Instance {
    pub fn module(&self) -> Result<&YDModule> {
        self.module.as_ref().ok_or_else(|| anyhow!("the instance declares no [[module]] sections"))
    }

    /// Display names of basis vectors, e.g. `X1, X2` for a module labelled `X`.
    pub fn basis_names(&self) -> Vec<String> {
        let Some(m) = &self.module else { return vec![] };
        let mut out = Vec::new();
        for (c, s) in m.components.iter().enumerate() {
            let label = self.file.modules[c].label().map(str::to_string).unwrap_or_else(|| format!("v{}_", c + 1));
            for i in 0..s.dim {
                out.push(format!("{label}{}", i + 1));
            }
        }
        out
    }
}
