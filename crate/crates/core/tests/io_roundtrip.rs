use qqpft_core::analysis::check_shannon_up;
use qqpft_core::io::{
    load_field, parse_report_line, read_field, read_signal, read_transform, save_field, write_field, write_signal,
    write_transform,
};
use qqpft_core::signals::{gaussian, quaternion_random};
use qqpft_core::{qqpft_fast, GridSpec, ParamPair, ParamSet, TFGrid4D, TfKind, TfPlan};

fn pair() -> ParamPair {
    ParamPair::new(
        ParamSet::new(0.1, -1.3, 0.2, 0.05, -0.1).unwrap(),
        ParamSet::new(-0.05, 0.9, 0.0, 0.3, 0.2).unwrap(),
    )
}

#[test]
fn signal_and_transform_bytes_round_trip() {
    let f = quaternion_random(GridSpec::new(16, 6.0).unwrap(), 3).unwrap();
    let mut bytes = Vec::new();
    write_signal(&mut bytes, &f).unwrap();
    let back = read_signal(&mut bytes.as_slice()).unwrap();
    assert_eq!(back, f);
    let mut again = Vec::new();
    write_signal(&mut again, &back).unwrap();
    assert_eq!(again, bytes);

    let q = qqpft_fast(&f, &pair()).unwrap();
    let mut bytes = Vec::new();
    write_transform(&mut bytes, &q).unwrap();
    let back = read_transform(&mut bytes.as_slice()).unwrap();
    assert_eq!(back.values(), q.values());
    assert_eq!(back.params(), q.params());
    let mut again = Vec::new();
    write_transform(&mut again, &back).unwrap();
    assert_eq!(again, bytes);
}

#[test]
fn fields_round_trip_for_every_kind() {
    let sp = GridSpec::new(8, 6.0).unwrap();
    let f = gaussian(sp, 1.0, [0.3, -0.2]).unwrap();
    let g = gaussian(sp, 0.9, [0.0, 0.0]).unwrap();
    let dir = tempfile::tempdir().unwrap();
    for kind in [TfKind::Stqqpft, TfKind::Qqpaf, TfKind::Qqpwvd] {
        let plan = TfPlan::auto(kind, &f, &g, &pair()).unwrap();
        let path = dir.path().join(format!("{}.qtf", kind.name()));
        save_field(&path, &plan).unwrap();
        let loaded = load_field(&path).unwrap();
        assert_eq!(loaded, TFGrid4D::collect(&plan));
        let mut bytes = Vec::new();
        write_field(&mut bytes, &loaded).unwrap();
        assert_eq!(bytes, std::fs::read(&path).unwrap());
    }
}

#[test]
fn corrupt_inputs_are_rejected() {
    let f = quaternion_random(GridSpec::new(4, 2.0).unwrap(), 1).unwrap();
    let mut bytes = Vec::new();
    write_signal(&mut bytes, &f).unwrap();
    assert!(read_signal(&mut &bytes[..bytes.len() - 3]).is_err());
    let mut extra = bytes.clone();
    extra.push(0);
    assert!(read_signal(&mut extra.as_slice()).is_err());
    let mut wrong = bytes.clone();
    wrong[0] ^= 0xff;
    assert!(read_signal(&mut wrong.as_slice()).is_err());
    assert!(read_field(&mut bytes.as_slice()).is_err());
}

#[test]
fn report_lines_round_trip() {
    let f = gaussian(GridSpec::new(32, 10.0).unwrap(), 1.0, [0.0, 0.0]).unwrap().normalized().unwrap();
    let r = check_shannon_up(&f, &pair()).unwrap().with_seed(11);
    let line = r.to_string();
    assert_eq!(line.split('\t').count(), 8);
    let parsed = parse_report_line(&line).unwrap();
    assert_eq!(parsed.to_string(), line);
    assert!(parse_report_line("a\tb").is_err());
}
