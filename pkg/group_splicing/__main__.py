from group_splicing.main import run_as_file

run_as_file()
