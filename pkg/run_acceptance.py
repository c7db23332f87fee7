#!/usr/bin/env python3
"""
Acceptance run for the Classified toolkit
Checks the environment, then runs every law group and both corpora
"""
import os
import subprocess
import sys

LAW_GROUPS = ["bcc", "adjunction", "corollary", "levelled", "strength", "ideal", "contractibility", "constancy"]


def check_python_version():
    """Check if Python version is compatible"""
    if sys.version_info < (3, 10):
        print("❌ Python 3.10 or higher is required")
        sys.exit(1)
    print(f"✅ Python {sys.version_info.major}.{sys.version_info.minor} detected")


def check_dependencies():
    """Check that the runtime dependencies import"""
    try:
        import pydantic
        import pydantic_settings
        print(f"✅ pydantic {pydantic.VERSION} with pydantic-settings")
    except ImportError:
        print("❌ Dependencies missing; run: pip install -r requirements.txt")
        sys.exit(1)


def check_environment_file():
    """Check if .env file exists"""
    if os.path.exists(".env"):
        print("✅ Environment file (.env) found")
    elif os.path.exists(".env.example"):
        print("⚠️  .env file not found, defaults apply (see .env.example)")


def run(args):
    """Run one CLI command and report its exit code"""
    command = [sys.executable, "-m", "classified", *args]
    result = subprocess.run(command, capture_output=True, text=True)
    mark = "✅" if result.returncode == 0 else "❌"
    print(f"{mark} {' '.join(args)} -> exit {result.returncode}")
    if result.returncode != 0:
        print(result.stdout or result.stderr)
    return result.returncode == 0


def main():
    """Main function"""
    print("🧪 Classified acceptance run")
    print("=" * 40)
    check_python_version()
    check_dependencies()
    check_environment_file()

    trials = os.environ.get("ACCEPTANCE_TRIALS", "20")
    results = [run(["laws", group, "--seed", "42", "--trials", trials]) for group in LAW_GROUPS]
    results.append(run(["corpus", "nonint"]))
    results.append(run(["corpus", "soundness"]))
    results.append(not run(["typecheck", "dp", "programs/boxfun.mml"]))

    passed = sum(results)
    print(f"\n{passed}/{len(results)} checks behaved as expected")
    sys.exit(0 if passed == len(results) else 1)


if __name__ == "__main__":
    main()
