//! Reference confusion matrices, stored as the decimal text they were
//! published with (column = true class).
//!
//! `M8` is the hard-assignment MNIST test-set matrix of an LDA classifier and
//! `M9` the matching soft-membership matrix (entries rounded to 2 decimals).

use crate::confusion::ConfusionMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fixture {
    Ma,
    Mb,
    Mc,
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
    M8,
    M9,
}

impl Fixture {
    pub const ALL: [Fixture; 12] = [
        Fixture::Ma,
        Fixture::Mb,
        Fixture::Mc,
        Fixture::M1,
        Fixture::M2,
        Fixture::M3,
        Fixture::M4,
        Fixture::M5,
        Fixture::M6,
        Fixture::M7,
        Fixture::M8,
        Fixture::M9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Ma => "Ma",
            Fixture::Mb => "Mb",
            Fixture::Mc => "Mc",
            Fixture::M1 => "M1",
            Fixture::M2 => "M2",
            Fixture::M3 => "M3",
            Fixture::M4 => "M4",
            Fixture::M5 => "M5",
            Fixture::M6 => "M6",
            Fixture::M7 => "M7",
            Fixture::M8 => "M8",
            Fixture::M9 => "M9",
        }
    }

    pub fn from_name(name: &str) -> Option<Fixture> {
        Fixture::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(name))
    }

    /// Comma-separated rows, one per line.
    pub fn csv(self) -> &'static str {
        match self {
            Fixture::Ma => MA_CSV,
            Fixture::Mb => MB_CSV,
            Fixture::Mc => MC_CSV,
            Fixture::M1 => M1_CSV,
            Fixture::M2 => M2_CSV,
            Fixture::M3 => M3_CSV,
            Fixture::M4 => M4_CSV,
            Fixture::M5 => M5_CSV,
            Fixture::M6 => M6_CSV,
            Fixture::M7 => M7_CSV,
            Fixture::M8 => M8_CSV,
            Fixture::M9 => M9_CSV,
        }
    }

    pub fn rows(self) -> Vec<Vec<f64>> {
        self.csv()
            .lines()
            .map(|line| {
                line.split(',')
                    .map(|cell| cell.trim().parse().expect("fixture text is numeric"))
                    .collect()
            })
            .collect()
    }

    pub fn matrix(self) -> ConfusionMatrix {
        ConfusionMatrix::from_dense(&self.rows()).expect("fixture is a valid confusion matrix")
    }
}

const MA_CSV: &str = "\
15,25\n\
15,25\n\
";

const MB_CSV: &str = "\
45,5\n\
5,45\n\
";

const MC_CSV: &str = "\
5,45\n\
45,5\n\
";

const M1_CSV: &str = "\
125,30\n\
15,130\n\
";

const M2_CSV: &str = "\
9,80\n\
1,210\n\
";

const M3_CSV: &str = "\
434,7\n\
10,232\n\
";

const M4_CSV: &str = "\
50,0,0\n\
0,35,7\n\
0,15,43\n\
";

const M5_CSV: &str = "\
48,28,19\n\
5,42,23\n\
14,9,44\n\
";

const M6_CSV: &str = "\
17,2,0,0,0\n\
28,127,0,0,0\n\
16,0,122,6,0\n\
6,0,4,3,0\n\
0,0,0,0,127\n\
";

const M7_CSV: &str = "\
17,2,0,0,0\n\
28,127,0,3,0\n\
16,0,122,6,0\n\
6,0,4,0,0\n\
0,0,0,0,127\n\
";

const M8_CSV: &str = "\
939,0,17,5,1,23,17,5,14,17\n\
1,1106,58,17,21,16,9,40,52,11\n\
2,2,820,21,6,4,11,17,9,4\n\
3,2,26,887,1,90,0,8,30,16\n\
1,1,16,2,873,17,19,19,32,66\n\
11,1,0,12,5,616,18,1,44,0\n\
13,5,34,12,10,23,874,2,17,1\n\
1,2,17,24,1,15,0,872,11,74\n\
8,16,39,18,12,62,10,5,741,12\n\
1,0,5,12,52,26,0,59,24,808\n\
";

const M9_CSV: &str = "\
358.72,28.22,77.91,78.47,43.83,87.26,76.82,61.75,65.44,48.65\n\
39.85,559.51,91.05,87.34,60.11,58.08,62.44,62.06,90.47,60.28\n\
73.24,82.13,304.03,92.69,59.87,49.34,88.77,81.59,75.25,53.07\n\
76.46,89.64,106.79,302.24,57.14,99.99,51.23,81.44,81.89,65.30\n\
49.64,45.77,64.79,55.22,318.28,66.97,86.53,64.93,81.98,141.22\n\
90.80,47.62,55.54,109.30,70.59,231.95,73.20,58.43,108.59,64.39\n\
86.12,57.39,92.38,55.86,82.26,67.64,336.46,47.78,69.91,61.94\n\
67.03,58.02,75.59,78.50,67.47,58.59,50.64,366.61,51.59,130.04\n\
78.81,104.32,98.75,83.29,85.08,111.45,66.51,59.52,272.41,83.02\n\
59.33,62.38,65.16,67.07,137.37,60.72,65.39,143.88,76.47,301.09\n\
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_totals() {
        let expected = [
            (Fixture::Ma, 2, 80.0),
            (Fixture::Mb, 2, 100.0),
            (Fixture::Mc, 2, 100.0),
            (Fixture::M1, 2, 300.0),
            (Fixture::M2, 2, 300.0),
            (Fixture::M3, 2, 683.0),
            (Fixture::M4, 3, 150.0),
            (Fixture::M5, 3, 232.0),
            (Fixture::M6, 5, 458.0),
            (Fixture::M7, 5, 458.0),
            (Fixture::M8, 10, 10000.0),
        ];
        for (f, n, total) in expected {
            let m = f.matrix();
            assert_eq!(m.n(), n, "{}", f.name());
            assert_eq!(m.total(), total, "{}", f.name());
        }
        let m9 = Fixture::M9.matrix();
        assert!((m9.total() - 10000.0).abs() < 0.5);
    }

    #[test]
    fn mnist_class_sizes_are_test_set_digit_counts() {
        let digits = [980.0, 1135.0, 1032.0, 1010.0, 982.0, 892.0, 958.0, 1028.0, 974.0, 1009.0];
        assert_eq!(Fixture::M8.matrix().class_sizes(), digits);
        for (got, want) in Fixture::M9.matrix().class_sizes().iter().zip(digits) {
            assert!((got - want).abs() < 0.05);
        }
    }

    #[test]
    fn names_round_trip() {
        for f in Fixture::ALL {
            assert_eq!(Fixture::from_name(f.name()), Some(f));
        }
        assert_eq!(Fixture::from_name("M10"), None);
    }
}
