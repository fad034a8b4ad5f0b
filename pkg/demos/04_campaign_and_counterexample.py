"""Seeded search for small real parts, and a disconnected counterexample.

Run with ``python demos/04_campaign_and_counterexample.py``.
"""

from graph_amplitude.harness import CampaignConfig, find_counterexample, report_dumps, run_campaign, run_conjd_campaign

### Every connected graph on 3 to 5 vertices, 200 random configurations each.
cfg = CampaignConfig(n_min=3, n_max=5, configs_per_graph=200, seed=7)
reports = run_campaign(cfg)
for r in reports:
    print(f"{r.graph_index:3d} {r.kind:>9} {str(r.graph):60s} min Re = {r.min_re:10.4f}  violations = {len(r.violations)}")

### CSV summary of the same run.
print(report_dumps(reports, "csv", cfg))

### Disconnected graphs can drop below 1: copy a graph with a non-real amplitude until the phase passes pi/2.
ce = find_counterexample(search_seed=3)
print(f"base {ce.base_graph}: value {ce.base_value:.6f}, phase {ce.theta:.4f}")
print(f"{ce.M} copies -> amplitude {ce.final_value:.4g} (Re < 1: {ce.final_re < 1})")

### Random PSD matrices against the partition inequality.
for n in range(2, 6):
    rep = run_conjd_campaign(n, 300, seed=n)
    print(f"n={n}: min margin {rep.min_margin:.4g}, violations {len(rep.violations)}")
