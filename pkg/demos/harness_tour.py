"""
Configs, presets, sweeps and result tables
==========================================

Everything the `catlattice` command does is plain library code. This
script walks the same path by hand: resolve a configuration, run it,
write and re-read the result table, rebuild the exact run from its own
metadata, and fan a parameter sweep across threads.
"""

import tempfile
import textwrap
from pathlib import Path

import numpy as np

import catlattice as cl

workdir = Path(tempfile.mkdtemp(prefix="catlattice-tour-"))

# 1. named presets resolve to full scenario configurations
print("presets:", ", ".join(sorted(cl.PRESETS)))
config = cl.load_preset("fig1-curve3")
print(f"fig1-curve3 -> kind={config.kind}, kappa0={config.get('kappa0')}, "
      f"sigma0={config.get('sigma0')}")

table = cl.run_oscillator(config)
print("columns:", table.columns)
print("bound states:", table.metadata["result.bound_count"],
      " plateau:", table.metadata["result.plateau"])

# 2. the same run from an INI file; unknown keys are rejected, not ignored
ini = workdir / "run.ini"
ini.write_text(textwrap.dedent("""\
    [oscillator]
    kappa0 = 3.0
    sigma0 = 0.0
    alpha0 = 3.0
    z_max = 20.0
    num_z = 1201
"""))
config_ini = cl.load_config_file(str(ini), "oscillator")
table_ini = cl.run_oscillator(config_ini)
same = table_ini.to_tsv_text() == cl.run_oscillator(config_ini).to_tsv_text()
print("repeat run bitwise identical:", same)

# 3. tables round-trip through TSV with their metadata block intact
out = workdir / "curve3.tsv"
table.write(str(out))
back = cl.read_table(str(out))
print("round-trip columns match:", back.columns == table.columns)
print("round-trip data match:", bool(np.array_equal(back.data, table.data)))

# 4. every table carries enough metadata to rebuild its own config
rebuilt = cl.config_from_metadata(back.metadata)
table_again = cl.run_oscillator(rebuilt)
print("rerun from metadata reproduces the table:",
      table_again.to_tsv_text() == table.to_tsv_text())

# 5. sweeps run one scenario per value, deterministically, across threads
sweep = cl.build_config("sweep", {
    "scenario": "oscillator",
    "parameter": "kappa0",
    "values": "0.2, 0.8, 1.6, 2.4",
})
points, summary = cl.run_sweep(sweep, threads=2)
print()
print("kappa0 sweep summary:")
for name in summary.columns:
    print(f"  {name:22s}", np.round(summary.column(name), 6))

# the command line spells the same runs as, for example,
#   catlattice oscillator --preset fig1-curve3 --out curve3.tsv
#   catlattice oscillator --config run.ini
#   catlattice sweep --config sweep.ini --threads 2
#   catlattice selftest
print()
print("scratch dir:", workdir)
