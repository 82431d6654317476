//! End-to-end spectral pipeline over the public API: directed matrices in,
//! combined graph, Fiedler ordering, partition and energy out.

use lancut_core::energy::{
    evaluate, required_trunks, savings, FabricConfig, IdlePolicy, LinkRate, PowerModel,
};
use lancut_core::fiedler::{fiedler, FiedlerOutcome};
use lancut_core::graph::symmetrize;
use lancut_core::partition::{cut_size, rsb_optimized, Partition};
use lancut_core::spectrum::laplacian;
use lancut_core::traffic::{
    combine, load_to_bandwidth, LoadClass, LoadClassTable, PeriodProfile, TrafficMatrix, Unit,
};

fn matrix_from(entries: &[(usize, usize, f64)]) -> TrafficMatrix {
    let mut rows = vec![vec![0.0; 9]; 9];
    for &(i, j, w) in entries {
        rows[i - 1][j - 1] = w;
    }
    TrafficMatrix::from_rows(rows, Unit::AbstractLoad).unwrap()
}

fn periods() -> Vec<PeriodProfile> {
    let working = matrix_from(&[
        (1, 4, 10.0),
        (1, 8, 10.0),
        (1, 9, 1.0),
        (2, 5, 10.0),
        (2, 9, 10.0),
        (3, 6, 10.0),
        (3, 7, 10.0),
        (4, 1, 10.0),
        (4, 8, 10.0),
        (5, 2, 10.0),
        (5, 6, 1.0),
        (5, 8, 1.0),
        (5, 9, 10.0),
        (6, 2, 1.0),
        (6, 3, 10.0),
        (6, 7, 10.0),
        (7, 3, 10.0),
        (7, 6, 10.0),
        (7, 8, 1.0),
        (8, 1, 10.0),
        (8, 4, 10.0),
        (8, 7, 1.0),
        (9, 2, 10.0),
        (9, 5, 10.0),
    ]);
    let nonworking = matrix_from(&[
        (2, 5, 10.0),
        (2, 9, 10.0),
        (5, 2, 10.0),
        (5, 9, 10.0),
        (9, 2, 10.0),
        (9, 5, 10.0),
    ]);
    vec![
        PeriodProfile::new("working".into(), 16.0, working).unwrap(),
        PeriodProfile::new("nonworking".into(), 8.0, nonworking).unwrap(),
    ]
}

fn load_table() -> LoadClassTable {
    let mut t = LoadClassTable::new();
    t.insert("10", LoadClass { frame_bytes: 1125, packets_per_second: 10_000 });
    t.insert("1", LoadClass { frame_bytes: 1125, packets_per_second: 1_000 });
    t
}

fn fabric() -> FabricConfig {
    FabricConfig {
        d_switches: 3,
        ports_per_switch: 5,
        device_ports_per_switch: 3,
        link_rates: vec![
            LinkRate { name: "100M".into(), capacity_mbps: 100.0 },
            LinkRate { name: "1G".into(), capacity_mbps: 1000.0 },
        ],
        wake_from_hibernate_s: 260.0,
        wake_from_off_s: 290.0,
    }
}

#[test]
fn combine_symmetrize_order_partition_evaluate() {
    let periods = periods();
    let combined = combine(&periods).unwrap();
    assert_eq!(combined.get(0, 3), 160.0);

    let graph = symmetrize(&combined);
    let lap = laplacian(&graph);
    assert_eq!(&lap.degrees()[4..9], &[992.0, 672.0, 672.0, 688.0, 976.0]);

    let ordering = match fiedler(&lap).unwrap() {
        FiedlerOutcome::Connected(r) => r.ordering,
        FiedlerOutcome::Disconnected { .. } => panic!("fixture graph is connected"),
    };
    let one_based: Vec<usize> = ordering.iter().map(|v| v + 1).collect();
    assert_eq!(one_based, vec![3, 6, 7, 2, 5, 9, 8, 1, 4]);

    let partition = rsb_optimized(&graph, 3, 3).unwrap();
    let cut = cut_size(&graph, &partition).unwrap();
    assert_eq!(cut.cut_size, 96.0);

    // energy path wants Mbps
    let table = load_table();
    let mbps: Vec<PeriodProfile> = periods
        .iter()
        .map(|p| {
            PeriodProfile::new(
                p.name().into(),
                p.hours(),
                load_to_bandwidth(p.matrix(), &table).unwrap(),
            )
            .unwrap()
        })
        .collect();

    let baseline = Partition::consecutive_blocks(9, 3).unwrap();
    let pm = PowerModel::calibrated_default();
    let f = fabric();

    // trunk demand between the first two switches collapses after the move
    let before = required_trunks(&baseline, mbps[0].matrix(), 100.0).unwrap()[&(0, 1)];
    let after = required_trunks(&partition, mbps[0].matrix(), 100.0).unwrap()[&(0, 1)];
    assert!(after < before);

    let base = evaluate(&baseline, &mbps, &f, &pm, IdlePolicy::AlwaysActive, "100M").unwrap();
    let opt = evaluate(&partition, &mbps, &f, &pm, IdlePolicy::OffIdle, "100M").unwrap();
    let saved = savings(&base, &opt).unwrap();
    assert!(saved > 0.0, "reorganization should save energy, got {saved}");
}
