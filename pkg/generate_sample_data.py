# generate_sample_data.py
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))

from catalog import get_entry, list_entries  # noqa: E402
from utils import DATA_DIR, save_fan  # noqa: E402

# ---- Catalog entries, default parameters ----
for name, params in list_entries():
    entry = get_entry(name)
    suffix = "".join(f"-{k}{v}" for k, v in params.items())
    path = save_fan(entry.fan, DATA_DIR / f"{name}{suffix}.json")
    print(f"💾 Saved {name} to {path}")

# ---- The d-fold family and a few Hirzebruch surfaces ----
for d in range(5, 8):
    save_fan(get_entry("terminal-fano-dfold", d=d).fan, DATA_DIR / f"terminal-fano-dfold-d{d}.json")
for a in (0, 2, 3):
    save_fan(get_entry("hirzebruch", a=a).fan, DATA_DIR / f"hirzebruch-a{a}.json")

print(f"✅ Fan files written to {DATA_DIR}")
