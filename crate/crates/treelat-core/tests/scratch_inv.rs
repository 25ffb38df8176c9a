use treelat_core::{dend_add, grove_op, name_table, Grove, GroveOpKind};

#[test]
fn grove_involution_total_five() {
    let mut add_bad = Vec::new();
    let mut lr_bad = Vec::new();
    let mut mid_bad = Vec::new();
    for total in 2..=5usize {
        let mut a_cnt = 0; let mut l_cnt = 0; let mut m_cnt = 0;
        for n in 1..total {
            let m = total - n;
            for v in name_table(n).unwrap().iter() {
                for w in name_table(m).unwrap().iter() {
                    let a = Grove::singleton(v.clone());
                    let b = Grove::singleton(w.clone());
                    let ad = a.involute().unwrap();
                    let bd = b.involute().unwrap();
                    if dend_add(&a, &b).unwrap().involute().unwrap() != dend_add(&bd, &ad).unwrap() {
                        if a_cnt == 0 && add_bad.len() < 3 { add_bad.push(format!("total {total}: {v} + {w}")); }
                        a_cnt += 1;
                    }
                    if grove_op(GroveOpKind::Left, &a, &b).unwrap().involute().unwrap()
                        != grove_op(GroveOpKind::Right, &bd, &ad).unwrap() {
                        if l_cnt == 0 && lr_bad.len() < 3 { lr_bad.push(format!("total {total}: {v} < {w}")); }
                        l_cnt += 1;
                    }
                    if grove_op(GroveOpKind::Mid, &a, &b).unwrap().involute().unwrap()
                        != grove_op(GroveOpKind::Mid, &bd, &ad).unwrap() {
                        if m_cnt == 0 && mid_bad.len() < 3 { mid_bad.push(format!("total {total}: {v} . {w}")); }
                        m_cnt += 1;
                    }
                }
            }
        }
        println!("total {total}: add {a_cnt} bad, left-right {l_cnt} bad, mid {m_cnt} bad");
    }
    println!("first add witnesses: {add_bad:?}");
    println!("first lr witnesses: {lr_bad:?}");
    println!("first mid witnesses: {mid_bad:?}");
    panic!("report only");
}
