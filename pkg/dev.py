#!/usr/bin/env python3
"""
Development helper script for the toric γ₂ checker
Provides convenient commands for development tasks
"""

import argparse
import subprocess
import sys
from pathlib import Path

# Project paths
PROJECT_ROOT = Path(__file__).resolve().parent
SRC_DIR = PROJECT_ROOT / "src"
DATA_DIR = PROJECT_ROOT / "data"
TESTS_DIR = PROJECT_ROOT / "tests"


def run_tests():
    """Run the test suite"""
    print("🧪 Running tests...")
    result = subprocess.run([sys.executable, "-m", "pytest", str(TESTS_DIR), "-q"])
    if result.returncode != 0:
        print("❌ Some tests failed")
        sys.exit(result.returncode)
    print("✅ All tests passed")


def verify_examples():
    """Re-derive every worked example and print the pass/fail table"""
    print("🔍 Verifying worked examples...")
    result = subprocess.run([sys.executable, str(PROJECT_ROOT / "gamma2_check.py"), "verify-examples"])
    sys.exit(result.returncode)


def generate_sample_data():
    """Write the catalog fans to data/"""
    print("📊 Generating sample fan files...")
    generate_script = PROJECT_ROOT / "generate_sample_data.py"
    if generate_script.exists():
        subprocess.run([sys.executable, str(generate_script)])
    else:
        print("❌ generate_sample_data.py not found in project root")


def install_deps():
    """Install project dependencies"""
    print("📦 Installing dependencies...")
    requirements_file = PROJECT_ROOT / "requirements.txt"
    if requirements_file.exists():
        subprocess.run([sys.executable, "-m", "pip", "install", "-r", str(requirements_file)])
    else:
        print("❌ requirements.txt not found in project root")
        print("Installing basic requirements...")
        subprocess.run([sys.executable, "-m", "pip", "install", "pandas", "numpy", "pytest", "hypothesis"])


def check_requirements():
    """Check if all requirements are installed"""
    print("🔍 Checking requirements...")
    required_packages = ["numpy", "pandas", "dotenv", "pytest", "hypothesis"]
    missing = []
    for package in required_packages:
        try:
            __import__(package)
            print(f"✅ {package}")
        except ImportError:
            print(f"❌ {package}")
            missing.append(package)

    if missing:
        print(f"\n📦 Missing packages: {', '.join(missing)}")
        print("Run: python3 dev.py install")
    else:
        print("\n✅ All requirements satisfied!")


def show_status():
    """Show project status"""
    print("📊 Toric γ₂ Checker Status")
    print("=" * 30)

    key_files = [
        (SRC_DIR / "fan.py", "Fans and validation"),
        (SRC_DIR / "gamma2.py", "γ₂ classifier"),
        (SRC_DIR / "cli.py", "Command-line front end"),
        (PROJECT_ROOT / "gamma2_check.py", "Launcher"),
        (PROJECT_ROOT / "requirements.txt", "Dependencies file"),
        (PROJECT_ROOT / "generate_sample_data.py", "Fan file generator"),
    ]
    for file_path, description in key_files:
        status = "✅" if file_path.exists() else "❌"
        print(f"{status} {description}: {file_path}")

    sys.path.insert(0, str(SRC_DIR))
    from utils import check_data_status

    print("\n💾 Fan files:")
    data_status = check_data_status(DATA_DIR)
    if not data_status:
        print("  (none) - run: python3 dev.py data")
    for name, status in data_status.items():
        print(f"  {name}: {status}")

    print("\n📁 Directory structure:")
    print(f"  Project root: {PROJECT_ROOT}")
    print(f"  Source code:  {SRC_DIR}")
    print(f"  Data files:   {DATA_DIR}")


def main():
    """Main CLI function"""
    parser = argparse.ArgumentParser(
        description="Toric γ₂ Checker Development Helper",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python3 dev.py install      # Install dependencies
  python3 dev.py test         # Run the test suite
  python3 dev.py verify       # Re-derive the worked examples
  python3 dev.py data         # Write catalog fans to data/
  python3 dev.py check        # Check requirements
  python3 dev.py status       # Show project status
        """
    )
    parser.add_argument(
        "command",
        choices=["test", "verify", "data", "install", "check", "status"],
        help="Command to execute"
    )

    if len(sys.argv) == 1:
        parser.print_help()
        return

    args = parser.parse_args()

    commands = {
        "test": run_tests,
        "verify": verify_examples,
        "data": generate_sample_data,
        "install": install_deps,
        "check": check_requirements,
        "status": show_status,
    }

    command_func = commands.get(args.command)
    if command_func:
        command_func()
    else:
        print(f"❌ Unknown command: {args.command}")
        parser.print_help()


if __name__ == "__main__":
    main()
