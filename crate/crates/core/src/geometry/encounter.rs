use serde::{Deserialize, Serialize};

use super::{Phase, Point, Segment, Trajectory};

/// Entry and exit of a moving point through a ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Intersection {
    pub t_in: f64,
    pub t_out: f64,
    pub chord_len: f64,
}

/// A returner crossing an observer's neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncounterEvent {
    pub observer_id: usize,
    pub returner_id: usize,
    pub t_in: f64,
    pub t_out: f64,
    pub chord_len: f64,
    pub phase: Phase,
}

/// Parameter interval `[a, b]` within `[0, 1]` where `start + t (end - start)` lies strictly
/// inside the ball, or `None` for a miss or a tangent touch.
pub(crate) fn chord_params(start: Point, end: Point, center: Point, r: f64) -> Option<(f64, f64)> {
    let d = end - start;
    let a = d.norm_sq();
    if a <= 0.0 {
        return None;
    }
    let w = start - center;
    let b = w.dot(d);
    let c = w.norm_sq() - r * r;
    let disc = b * b - a * c;
    if disc <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    // stable root pair
    let q = if b >= 0.0 { -(b + sq) } else { -b + sq };
    let (mut t1, mut t2) = if q != 0.0 { (q / a, c / q) } else { (-sq / a, sq / a) };
    if t1 > t2 {
        std::mem::swap(&mut t1, &mut t2);
    }
    let lo = t1.max(0.0);
    let hi = t2.min(1.0);
    (hi > lo).then_some((lo, hi))
}

/// Exact entry/exit times of a directed, timed segment through the ball
/// (or, for in-plane segments, the disk) of radius `r` around `center`.
pub fn segment_ball_encounter(seg: &Segment, center: Point, r: f64) -> Option<Intersection> {
    let (a, b) = chord_params(seg.start, seg.end, center, r)?;
    let dur = seg.duration();
    let len = seg.length();
    Some(Intersection {
        t_in: seg.t_start + a * dur,
        t_out: seg.t_start + b * dur,
        chord_len: (b - a) * len,
    })
}

/// All encounters of the given returners with the neighborhood of radius `r` around
/// `center`, sorted by entry time then returner id. Monitor and descent segments
/// never produce events.
pub fn encounters<'a>(
    observer_id: usize,
    center: Point,
    returners: impl IntoIterator<Item = (usize, &'a Trajectory)>,
    r: f64,
) -> Vec<EncounterEvent> {
    let mut events = Vec::new();
    for (returner_id, traj) in returners {
        for seg in traj.segments.iter().filter(|s| s.phase.collects()) {
            if let Some(hit) = segment_ball_encounter(seg, center, r) {
                events.push(EncounterEvent {
                    observer_id,
                    returner_id,
                    t_in: hit.t_in,
                    t_out: hit.t_out,
                    chord_len: hit.chord_len,
                    phase: seg.phase,
                });
            }
        }
    }
    events.sort_by(|a, b| a.t_in.total_cmp(&b.t_in).then(a.returner_id.cmp(&b.returner_id)));
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seg(a: Point, b: Point, v: f64) -> Segment {
        Segment { start: a, end: b, t_start: 0.0, t_end: a.distance(b) / v, phase: Phase::Return }
    }

    #[test]
    fn diametral_chord() {
        let s = seg(Point::new(-10.0, 0.0, 0.0), Point::new(10.0, 0.0, 0.0), 2.0);
        let hit = segment_ball_encounter(&s, Point::ORIGIN, 1.5).unwrap();
        assert!((hit.chord_len - 3.0).abs() < 1e-12);
        assert!((hit.t_in - 8.5 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn miss_and_tangent_are_none() {
        let s = seg(Point::new(-2.0, 0.0, 0.0), Point::new(2.0, 0.0, 0.0), 1.0);
        assert!(segment_ball_encounter(&s, Point::new(0.0, 3.0, 0.0), 1.0).is_none());
        assert!(segment_ball_encounter(&s, Point::new(0.0, 1.0, 0.0), 1.0).is_none());
    }

    #[test]
    fn offset_chord_hand_value() {
        let s = seg(Point::new(-2.0, 0.0, 0.0), Point::new(2.0, 0.0, 0.0), 1.0);
        let hit = segment_ball_encounter(&s, Point::new(0.0, 0.6, 0.0), 1.0).unwrap();
        assert!((hit.chord_len - 1.6).abs() < 1e-12);
    }

    #[test]
    fn start_inside_enters_at_start() {
        let s = seg(Point::new(0.1, 0.0, 0.0), Point::new(5.0, 0.0, 0.0), 1.0);
        let hit = segment_ball_encounter(&s, Point::ORIGIN, 1.0).unwrap();
        assert_eq!(hit.t_in, 0.0);
        assert!((hit.chord_len - 0.9).abs() < 1e-12);
    }

    #[test]
    fn event_list_sorted_and_filtered() {
        let far = Trajectory { segments: vec![seg(Point::new(5.0, 5.0, 5.0), Point::new(6.0, 5.0, 5.0), 1.0)] };
        assert!(encounters(0, Point::ORIGIN, [(1, &far)], 1.0).is_empty());
        let mut late = seg(Point::new(-2.0, 0.0, 0.0), Point::new(2.0, 0.0, 0.0), 1.0);
        late.t_start += 3.0;
        late.t_end += 3.0;
        let mut descent = late;
        descent.phase = Phase::ReturnDescent;
        let a = Trajectory { segments: vec![late] };
        let b = Trajectory { segments: vec![seg(Point::new(0.0, -2.0, 0.0), Point::new(0.0, 2.0, 0.0), 1.0)] };
        let c = Trajectory { segments: vec![descent] };
        let ev = encounters(9, Point::ORIGIN, [(1, &a), (2, &b), (3, &c)], 1.0);
        assert_eq!(ev.len(), 2);
        assert_eq!(ev[0].returner_id, 2);
        assert_eq!(ev[1].returner_id, 1);
        assert!(ev.iter().all(|e| e.observer_id == 9));
    }

    proptest! {
        #[test]
        fn chord_invariants(
            ax in -3.0f64..3.0, ay in -3.0f64..3.0, az in -3.0f64..3.0,
            bx in -3.0f64..3.0, by in -3.0f64..3.0, bz in -3.0f64..3.0,
            r in 0.01f64..2.0, v in 0.1f64..50.0,
        ) {
            let s = seg(Point::new(ax, ay, az), Point::new(bx, by, bz), v);
            prop_assume!(s.length() > 1e-6);
            if let Some(hit) = segment_ball_encounter(&s, Point::ORIGIN, r) {
                prop_assert!(hit.t_in < hit.t_out);
                prop_assert!(hit.chord_len > 0.0 && hit.chord_len <= 2.0 * r * (1.0 + 1e-12));
                let rel = (hit.chord_len - v * (hit.t_out - hit.t_in)).abs() / hit.chord_len;
                prop_assert!(rel < 1e-9);
                // midpoint of the chord lies inside the ball
                let tm = 0.5 * (hit.t_in + hit.t_out) / s.duration();
                let m = s.start + (s.end - s.start) * tm;
                prop_assert!(m.norm() < r * (1.0 + 1e-9));
            }
        }
    }
}
