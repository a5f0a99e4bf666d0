"""
Writing input files for the command-line tool
=============================================

Dump the bit-flip example to JSON and run the ``qrev`` subcommands on it.
Equivalent shell session::

    qrev check-kl bitflip_channel.json bitflip_code.json
    qrev mutinfo identity_channel.json maxmixed_qubit.json --json
"""
import json
import sys
import tempfile
from pathlib import Path

from qrev import catalog as cat
from qrev import io
from qrev.cli import main
from qrev.qstate import maximally_mixed

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp())
out.mkdir(parents=True, exist_ok=True)
docs = {
    "bitflip_channel.json": io.channel_to_json(cat.single_bit_flip_channel(0.3)),
    "bitflip_code.json": io.code_to_json(cat.bit_flip_code()),
    "identity_channel.json": io.channel_to_json(cat.identity_channel(2)),
    "maxmixed_qubit.json": io.state_to_json(maximally_mixed(2)),
}
for name, doc in docs.items():
    (out / name).write_text(json.dumps(doc))
print("wrote", ", ".join(docs), "to", out)

status = main(["check-kl", str(out / "bitflip_channel.json"), str(out / "bitflip_code.json")])
print("exit status", status)
main(["mutinfo", str(out / "identity_channel.json"), str(out / "maxmixed_qubit.json"), "--json"])
