//! The bundled US CDER monthly-approvals dataset (Jan 1939 - Dec 2019),
//! transcribed from the published monthly table: 972 observations summing
//! to 181,157.

use crate::series::{parse_monthly_csv, GapPolicy, MonthlySeries, ValueDomain};

pub const BUNDLED_CSV: &str = include_str!("../data/us_cder_monthly_approvals.csv");

/// Parses the bundled dataset. Infallible for the shipped file.
pub fn bundled_approvals() -> MonthlySeries {
    parse_monthly_csv(
        BUNDLED_CSV,
        GapPolicy::Error,
        ValueDomain::Counts,
        "us_cder_monthly_approvals".to_string(),
    )
    .expect("bundled dataset is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::MonthYear;

    #[test]
    fn shape_and_total() {
        let s = bundled_approvals();
        assert_eq!(s.len(), 972);
        assert_eq!(s.start, MonthYear::new(1939, 1));
        assert_eq!(s.values.iter().sum::<f64>(), 181_157.0);
        assert_eq!(s.month_at(971), MonthYear::new(2019, 12));
    }
}
