#!/usr/bin/env python3
"""
Setup check for the toric γ₂ checker
Confirms the dependencies import and runs one small exact computation
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))


def main():
    print("🔍 Toric γ₂ checker - Setup Check")
    print("=" * 40)

    for package, hint in [("numpy", "numpy"), ("sympy", "sympy"), ("pandas", "pandas"), ("pytest", "pytest"),
                          ("hypothesis", "hypothesis")]:
        try:
            __import__(package)
            print(f"✅ {package} installed")
        except ImportError:
            print(f"❌ {package} missing - install with: pip install {hint}")
            return False

    try:
        import dotenv  # noqa: F401
        print("✅ python-dotenv installed")
    except ImportError:
        print("⚠️  python-dotenv missing - .env files will be ignored")

    from catalog import projective_space
    from surfaces import gamma2_surface

    value = gamma2_surface(projective_space(2).fan)
    if value != 3:
        print(f"❌ γ₂(P²) computed as {value}, expected 3")
        return False
    print("✅ γ₂(P²) = 3")

    if Path("data").exists() and any(Path("data").glob("*.json")):
        print("✅ Sample fan files found")
    else:
        print("⚠️  No fan files in data/ - run: python3 generate_sample_data.py")

    print("\n🎉 Setup looks good!")
    return True


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
