import json
import logging
import os
import pandas as pd
from Bio import SeqIO
from Bio.Seq import Seq
from Bio.SeqRecord import SeqRecord
from ..constants import LOGGER_NAME
from .. import exceptions

logger = logging.getLogger(LOGGER_NAME)


def read_json(path):
    """
    Read a JSON document
    """
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except OSError as exc:
        raise exceptions.IoError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise exceptions.ValidationError(f"{path} is not valid JSON: {exc}") from exc


def ensure_directory(directory):
    """
    Create the directory if missing
    """
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as exc:
        raise exceptions.IoError(f"cannot create directory {directory}: {exc}") from exc
    return directory


def write_json(data, path):
    """
    Write a JSON document
    """
    logger.debug(f'write json {path}')
    try:
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(data, handle, indent=2)
            handle.write('\n')
    except OSError as exc:
        raise exceptions.IoError(f"cannot write {path}: {exc}") from exc
    return path


def append_json_line(data, path):
    """
    Append one JSON record to a JSON lines file
    """
    try:
        with open(path, 'a', encoding='utf-8') as handle:
            handle.write(json.dumps(data) + '\n')
    except OSError as exc:
        raise exceptions.IoError(f"cannot append to {path}: {exc}") from exc
    return path


def write_csv(frame: pd.DataFrame, path):
    """
    Write a data frame as CSV without the index
    """
    logger.debug(f'write csv {path} ({len(frame)} rows)')
    try:
        frame.to_csv(path, index=False)
    except OSError as exc:
        raise exceptions.IoError(f"cannot write {path}: {exc}") from exc
    return path


def write_fasta(sequence: str, identifier: str, description: str, path):
    """
    Write a single FASTA record
    """
    record = SeqRecord(Seq(sequence), id=identifier, description=description)
    try:
        with open(path, 'w', encoding='utf-8') as handle:
            SeqIO.write(record, handle, 'fasta')
    except OSError as exc:
        raise exceptions.IoError(f"cannot write {path}: {exc}") from exc
    return path
