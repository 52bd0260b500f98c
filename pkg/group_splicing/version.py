import dataclasses
import subprocess
from pathlib import Path

from loguru import logger

RELEASE = "1.0.0"


@dataclasses.dataclass
class Version:
    major: int = 0
    minor: int = 0
    patch: int = 0

    def __str__(self):
        return f"{self.major}.{self.minor}.{self.patch}"

    @classmethod
    def from_string(cls, version_string: str) -> "Version":
        major, minor, patch = (int(part) for part in version_string.split("."))
        return cls(major=major, minor=minor, patch=patch)


def describe_version(repo_dir: Path = Path(__file__).parent) -> str:
    """git-describe string when running from a checkout, else v<release>."""
    try:
        described = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            cwd=repo_dir,
            capture_output=True,
            text=True,
            timeout=5,
            check=True,
        ).stdout.strip()
    except (OSError, subprocess.SubprocessError) as e:
        logger.debug(f"git describe unavailable: {e}")
        described = ""
    return described or f"v{Version.from_string(RELEASE)}"
