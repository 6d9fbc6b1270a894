//! JSON wire formats.
//!
//! * fusion ring: `{"labels": [...], "dual": [...], "fusion": [[i,j,k,mult], ...]}`
//!   listing nonzero entries only;
//! * ribbon data: the ring format plus `"dims": [[a_num,a_den,b_num,b_den,t], ...]`
//!   and `"twists": [[num,den], ...]`;
//! * metric group: `{"group": [invariant factors], "q": [[element, num, den], ...]}`.
//!
//! Emitted JSON lists fusion entries in lexicographic order, so output of a
//! build re-imports to an identical ring and re-serializes byte for byte.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{AlgebraicReal, ModOne, Phase};
use crate::group::AbelianGroup;
use crate::metric::MetricGroup;
use crate::modular::RibbonData;
use crate::ring::FusionRing;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingJson {
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    pub fusion: Vec<[u64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<AlgebraicReal>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twists: Option<Vec<Phase>>,
}

impl From<&FusionRing> for RingJson {
    fn from(ring: &FusionRing) -> Self {
        RingJson {
            labels: ring.labels().to_vec(),
            dual: ring.duals().to_vec(),
            fusion: ring
                .entries()
                .into_iter()
                .map(|(i, j, k, m)| [i as u64, j as u64, k as u64, u64::from(m)])
                .collect(),
            dims: ring.exact_dims().map(<[AlgebraicReal]>::to_vec),
            twists: None,
        }
    }
}

impl From<&RibbonData> for RingJson {
    fn from(rd: &RibbonData) -> Self {
        let mut json = RingJson::from(rd.ring());
        json.dims = Some(rd.dims().to_vec());
        json.twists = Some(rd.twists().to_vec());
        json
    }
}

impl RingJson {
    /// The ring, with exact dimensions attached when `dims` is present.
    pub fn to_ring(&self) -> Result<FusionRing> {
        let mut entries = Vec::with_capacity(self.fusion.len());
        for &[i, j, k, m] in &self.fusion {
            let m = u32::try_from(m).map_err(|_| Error::Malformed(format!("multiplicity {m} too large")))?;
            entries.push((i as usize, j as usize, k as usize, m));
        }
        let ring = FusionRing::new(self.labels.clone(), self.dual.clone(), entries)?;
        match &self.dims {
            Some(d) => ring.with_exact_dims(d.clone()),
            None => Ok(ring),
        }
    }

    pub fn to_ribbon(&self) -> Result<RibbonData> {
        let dims = self.dims.clone().ok_or_else(|| Error::Malformed("ribbon data needs \"dims\"".into()))?;
        let twists = self.twists.clone().ok_or_else(|| Error::Malformed("ribbon data needs \"twists\"".into()))?;
        let ring = RingJson { dims: None, twists: None, ..self.clone() }.to_ring()?;
        RibbonData::new(ring, dims, twists)
    }
}

pub fn ring_to_json(ring: &FusionRing) -> String {
    serde_json::to_string_pretty(&RingJson::from(ring)).expect("serializable")
}

pub fn ring_from_json(text: &str) -> Result<FusionRing> {
    parse::<RingJson>(text)?.to_ring()
}

pub fn ribbon_to_json(rd: &RibbonData) -> String {
    serde_json::to_string_pretty(&RingJson::from(rd)).expect("serializable")
}

pub fn ribbon_from_json(text: &str) -> Result<RibbonData> {
    parse::<RingJson>(text)?.to_ribbon()
}

/// Partial ribbon data: a ring with dims and optionally some twists (`null` for unknown).
#[derive(Clone, Debug, Deserialize)]
pub struct PartialRibbonJson {
    #[serde(flatten)]
    pub ring: RingJsonNoTwists,
    #[serde(default)]
    pub twists: Option<Vec<Option<Phase>>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RingJsonNoTwists {
    pub labels: Vec<String>,
    pub dual: Vec<usize>,
    pub fusion: Vec<[u64; 4]>,
    #[serde(default)]
    pub dims: Option<Vec<AlgebraicReal>>,
}

impl PartialRibbonJson {
    pub fn parse(text: &str) -> Result<(FusionRing, Option<Vec<Option<Phase>>>)> {
        let p: PartialRibbonJson = parse(text)?;
        let RingJsonNoTwists { labels, dual, fusion, dims } = p.ring;
        let ring = RingJson { labels, dual, fusion, dims, twists: None }.to_ring()?;
        Ok((ring, p.twists))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricGroupJson {
    pub group: Vec<u64>,
    pub q: Vec<(usize, i64, i64)>,
}

impl From<&MetricGroup> for MetricGroupJson {
    fn from(mg: &MetricGroup) -> Self {
        MetricGroupJson {
            group: mg.group().factors().to_vec(),
            q: mg.values().iter().enumerate().map(|(a, v)| (a, v.numer(), v.denom())).collect(),
        }
    }
}

impl MetricGroupJson {
    /// Elements missing from `q` take the value 0.
    pub fn to_metric_group(&self) -> Result<MetricGroup> {
        let group = AbelianGroup::new(self.group.clone())?;
        let mut q = vec![ModOne::zero(); group.order() as usize];
        for &(a, num, den) in &self.q {
            if a >= q.len() || den == 0 {
                return Err(Error::Malformed(format!("bad q entry [{a}, {num}, {den}]")));
            }
            q[a] = ModOne::new(num, den);
        }
        MetricGroup::new(group, q)
    }
}

pub fn metric_to_json(mg: &MetricGroup) -> String {
    serde_json::to_string(&MetricGroupJson::from(mg)).expect("serializable")
}

pub fn metric_from_json(text: &str) -> Result<MetricGroup> {
    parse::<MetricGroupJson>(text)?.to_metric_group()
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::examples;

    #[test]
    fn ring_round_trip_is_byte_stable() {
        let ring = examples::ising();
        let text = ring_to_json(&ring);
        let back = ring_from_json(&text).unwrap();
        assert_eq!(back, ring);
        assert_eq!(ring_to_json(&back), text);
        assert!(text.contains("\"dims\""));
    }

    #[test]
    fn trivial_ring_from_text() {
        let ring = ring_from_json(r#"{"labels":["1"],"dual":[0],"fusion":[[0,0,0,1]]}"#).unwrap();
        assert!(ring.verify_axioms().passed());
        assert!(matches!(ring_from_json(r#"{"labels":["1"],"dual":[0,1],"fusion":[]}"#), Err(Error::Malformed(_))));
        assert!(matches!(ring_from_json("{"), Err(Error::Malformed(_))));
    }

    #[test]
    fn metric_round_trip() {
        let mg = crate::metric::cyclic_form(5, 1, 1).unwrap();
        let text = metric_to_json(&mg);
        assert_eq!(metric_from_json(&text).unwrap(), mg);
    }

    #[test]
    fn partial_twists() {
        let text = r#"{"labels":["1","a"],"dual":[0,1],"fusion":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,0,1]],
                       "dims":[[1,1,0,1,1],[1,1,0,1,1]],"twists":[[0,1],null]}"#;
        let (ring, twists) = PartialRibbonJson::parse(text).unwrap();
        assert_eq!(ring.rank(), 2);
        assert_eq!(twists.unwrap()[1], None);
    }
}
