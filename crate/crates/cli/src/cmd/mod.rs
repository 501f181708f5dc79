pub mod compare;
pub mod inspect;
pub mod measure;
pub mod plot;
pub mod train;
pub mod vocab;

use crate::CliError;

pub fn parse_measures(list: &str) -> anyhow::Result<Vec<neurotopo::centrality::MeasureId>> {
    neurotopo::centrality::MeasureId::parse_list(list).map_err(|e| CliError::Usage(e.to_string()).into())
}
