from pathlib import Path

from group_splicing import info_files, paths
from group_splicing.file_handling import create_file
from group_splicing.run_config import RunConfig


def make_output_folder_structure(out_dir: Path):
    (out_dir / paths.LOGS_FOLDER).mkdir(parents=True, exist_ok=True)
    create_file(path=(out_dir / paths.LOCKFILE_PATH), content="")


def save_effective_config(run_config: RunConfig):
    info_files.save(
        run_config.out_dir / paths.RUN_CONFIG_FILENAME, run_config.to_dict()
    )
