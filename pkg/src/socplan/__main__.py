from socplan.cli import entry

entry()
